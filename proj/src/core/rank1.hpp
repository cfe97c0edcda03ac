#pragma once

#include "system.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hrck::rank1 {

struct Edge {
  std::string name;
  Index tail = 0;
  Index head = 0;
};

// Finite graph with named edges; each edge e carries an implicit reverse.
struct FiniteGraph {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;

  // Degree counting both directions of each incident edge (a loop adds 2).
  std::vector<std::size_t> degrees() const;
};

struct GraphCheck {
  bool ok = true;             // connected and every edge endpoint valid
  std::string error;          // first hard violation
  std::vector<std::string> warnings;  // thickness (degree < 3)
};

GraphCheck validate_graph(const FiniteGraph& g);

FiniteGraph parse_graph(std::string_view content);
std::string serialize_graph(const FiniteGraph& g);

// Directed edges e1, rev(e1), e2, rev(e2), ... in declaration order.
struct EdgeAlphabet {
  std::vector<std::string> names;
  std::vector<Index> tails;
  std::vector<Index> heads;

  std::size_t size() const noexcept { return names.size(); }
  static Index reverse(Index e) noexcept { return e ^ 1u; }
};

EdgeAlphabet edge_alphabet(const FiniteGraph& g);

// M(y, x) = 1 iff head(x) = tail(y) and y != reverse(x). The decoration is
// the set of edges leaving `base` with delta the inclusion.
TransitionSystem graph_to_matrix(const FiniteGraph& g, Index base = 0);

struct Simplicity {
  bool simple = false;
  bool irreducible = false;
  bool permutation = false;
  std::string reason;
};

Simplicity ck_simplicity_check(const BinaryMatrix& m);

}  // namespace hrck::rank1
