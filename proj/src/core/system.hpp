#pragma once

#include "binary_matrix.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hrck {

// Admissible initial letters: delta maps each decoration to a letter.
struct DecorationMap {
  std::vector<std::string> names;
  std::vector<Index> delta;

  bool total(std::size_t alphabet_size) const;
};

// Alphabet plus one transition matrix per direction (rank 1 or 2).
struct TransitionSystem {
  std::vector<std::string> alphabet;
  std::vector<BinaryMatrix> matrices;
  std::optional<DecorationMap> decoration;

  std::size_t rank() const noexcept { return matrices.size(); }
  std::size_t size() const noexcept { return alphabet.size(); }
  const BinaryMatrix& matrix(std::size_t direction) const { return matrices.at(direction); }
};

// Sparse triplet text: `matrix <name> <n> <n>` followed by one `i j 1` line
// per nonzero (row i, column j).
std::string serialize_matrix(std::string_view name, const BinaryMatrix& m);
std::string serialize_matrices(const TransitionSystem& system);

struct NamedMatrix {
  std::string name;
  BinaryMatrix matrix;
};

std::vector<NamedMatrix> parse_matrices(std::string_view content);

// Letters named by their index, rank taken from the number of blocks.
TransitionSystem system_from_matrices(std::vector<NamedMatrix> blocks);

}  // namespace hrck
