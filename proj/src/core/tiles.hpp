#pragma once

#include "presentation.hpp"
#include "system.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hrck::tiles {

// Edge labels of a basepointed parallelogram: lower-left (left -> base),
// lower-right (base -> right), middle (right -> left), upper-right
// (top -> right) and upper-left (left -> top).
struct Tile {
  Index ll = 0, lr = 0, mid = 0, ur = 0, ul = 0;

  friend bool operator==(const Tile&, const Tile&) = default;
};

class TileAlphabet {
public:
  TileAlphabet() = default;
  explicit TileAlphabet(std::vector<Tile> tiles);

  std::size_t size() const noexcept { return tiles_.size(); }
  const Tile& operator[](Index i) const { return tiles_.at(i); }
  const std::vector<Tile>& tiles() const noexcept { return tiles_; }
  auto begin() const { return tiles_.begin(); }
  auto end() const { return tiles_.end(); }

  // Tiles are keyed by (ll, lr, ur).
  std::optional<Index> find(Index ll, Index lr, Index ur) const;

private:
  std::vector<Tile> tiles_;
};

// Every non-degenerate tile, ordered by (ll, lr, ur). Refuses presentations
// that fail validation.
TileAlphabet build_alphabet(const presentation::TrianglePresentation& p);

// M1(b,a) = 1 iff ll(b) = ur(a) and lr(b) != mid(a);
// M2(c,a) = 1 iff lr(c) = ul(a) and ll(c) != mid(a).
std::pair<BinaryMatrix, BinaryMatrix> build_transition_matrices(const TileAlphabet& alphabet);

struct BuildingSystem {
  presentation::TrianglePresentation presentation;
  TileAlphabet tiles;
  TransitionSystem system;
};

// Alphabet and matrices together, with the structural postconditions
// (alphabet size, row and column sums q^2, commuting {0,1} product) checked.
BuildingSystem build_building_system(const presentation::TrianglePresentation& p);

std::string tile_name(const presentation::TrianglePresentation& p, const Tile& t);

// Given M1(b,a) = 1 and M2(c,b) = 1, the unique d with M2(d,a) = 1 and
// M1(c,d) = 1.
Index corner_complete(Index a, Index b, Index c, const TransitionSystem& system);

// Given M2(d,a) = 1 and M1(c,d) = 1, the unique b with M1(b,a) = 1 and
// M2(c,b) = 1.
Index corner_complete_lower(Index a, Index d, Index c, const TransitionSystem& system);

// `tile <index> ll lr mid ur ul` per tile, using generator names.
std::string serialize_tile_table(const BuildingSystem& b);

}  // namespace hrck::tiles
