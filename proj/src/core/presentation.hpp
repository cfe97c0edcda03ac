#pragma once

#include "binary_matrix.hpp"
#include "plane.hpp"

#include <array>
#include <chrono>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hrck::presentation {

struct Triple {
  Index x = 0, y = 0, z = 0;

  Triple rotated() const { return {y, z, x}; }
  // Least cyclic rotation; used as the relator representative.
  Triple canonical() const;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Generator set P and the cyclically closed triple set T of a triangle
// presentation, with the derived map x -> {y : (x,y,z) in T}.
class TrianglePresentation {
public:
  TrianglePresentation() = default;
  // Closes `relators` under cyclic rotation; does not validate.
  TrianglePresentation(int q, std::vector<std::string> generators, std::span<const Triple> relators);

  int q() const noexcept { return q_; }
  std::size_t generator_count() const noexcept { return generators_.size(); }
  const std::string& generator(Index i) const { return generators_.at(i); }
  const std::vector<std::string>& generators() const noexcept { return generators_; }
  std::optional<Index> find_generator(std::string_view name) const;

  const std::vector<Triple>& triples() const noexcept { return triples_; }
  bool contains(const Triple& t) const;
  // One representative per rotation class, sorted.
  std::vector<Triple> relators() const;

  const std::vector<Index>& lambda_derived(Index x) const { return lambda_.at(x); }
  // All z with (x, y, z) in T.
  std::span<const Index> completions(Index x, Index y) const;
  // The z with (x, y, z) in T when it is unique.
  std::optional<Index> completion(Index x, Index y) const;

  friend bool operator==(const TrianglePresentation& a, const TrianglePresentation& b) {
    return a.q_ == b.q_ && a.generators_ == b.generators_ && a.triples_ == b.triples_;
  }

private:
  int q_ = 0;
  std::vector<std::string> generators_;
  std::vector<Triple> triples_;
  std::vector<std::vector<Index>> lambda_;
  std::vector<std::vector<Index>> completions_;  // indexed x * n + y
};

TrianglePresentation parse_presentation(std::string_view content);
std::string serialize_presentation(const TrianglePresentation& p);

std::string format_triple(const TrianglePresentation& p, const Triple& t);

plane::ValidationReport validate_triangle_presentation(const TrianglePresentation& p);

// Line system {lambda_derived(x)} as a plane, and x -> line x.
plane::PointLineCorrespondence derived_correspondence(const TrianglePresentation& p);

struct SearchOptions {
  std::size_t limit = 10;
  std::uint64_t max_nodes = 50'000'000;
  std::chrono::milliseconds timeout{0};  // 0 disables the wall-clock guard
};

struct SearchResult {
  std::vector<TrianglePresentation> presentations;
  bool partial = false;  // a guard fired before the search space was exhausted
  std::uint64_t nodes = 0;
};

// Enumerates completions (x, y) -> z compatible with a fixed lambda, in the
// order given by scanning pairs (x, y) by index and trying z ascending.
SearchResult search_presentations(const plane::PointLineCorrespondence& corr,
                                  const SearchOptions& options);

}  // namespace hrck::presentation
