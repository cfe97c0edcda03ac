#include "rank1.hpp"

#include "error.hpp"
#include "text.hpp"
#include "words.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hrck::rank1 {

std::vector<std::size_t> FiniteGraph::degrees() const {
  std::vector<std::size_t> deg(vertex_count, 0);
  for (const Edge& e : edges) {
    ++deg.at(e.tail);
    ++deg.at(e.head);
  }
  return deg;
}

GraphCheck validate_graph(const FiniteGraph& g) {
  GraphCheck r;
  if (g.vertex_count == 0) return {false, "graph has no vertices", {}};
  for (const Edge& e : g.edges)
    if (e.tail >= g.vertex_count || e.head >= g.vertex_count)
      return {false, "edge " + e.name + " has an endpoint outside the vertex range", {}};

  std::vector<Index> parent(g.vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Edge& e : g.edges) parent[find(e.tail)] = find(e.head);
  for (Index v = 1; v < g.vertex_count; ++v)
    if (find(v) != find(0)) return {false, "graph is disconnected at vertex " + std::to_string(v), {}};

  const auto deg = g.degrees();
  for (Index v = 0; v < g.vertex_count; ++v)
    if (deg[v] < 3)
      r.warnings.push_back("vertex " + std::to_string(v) + " has degree " + std::to_string(deg[v]) +
                           " < 3; the covering tree is not thick");
  return r;
}

FiniteGraph parse_graph(std::string_view content) {
  FiniteGraph g;
  std::size_t header = 0;
  for (const auto& line : text::tokenize(content)) {
    const auto& t = line.tokens;
    if (t[0] == "vertices") {
      if (header) throw ParseError(line.number, "duplicate `vertices` record");
      if (t.size() != 2) throw ParseError(line.number, "expected `vertices <n>`");
      g.vertex_count = text::parse_count(t[1], line.number);
      header = line.number;
    } else if (t[0] == "edge") {
      if (!header) throw ParseError(line.number, "`edge` before `vertices`");
      if (t.size() != 4) throw ParseError(line.number, "expected `edge <name> <tail> <head>`");
      Edge e{t[1], static_cast<Index>(text::parse_count(t[2], line.number)),
             static_cast<Index>(text::parse_count(t[3], line.number))};
      if (e.tail >= g.vertex_count || e.head >= g.vertex_count)
        throw ParseError(line.number, "edge endpoint outside 0.." + std::to_string(g.vertex_count - 1));
      for (const Edge& other : g.edges)
        if (other.name == e.name) throw ParseError(line.number, "duplicate edge name " + e.name);
      g.edges.push_back(std::move(e));
    } else {
      throw ParseError(line.number, "unknown record '" + t[0] + "'");
    }
  }
  if (!header) throw ParseError(1, "missing `vertices <n>` record");
  return g;
}

std::string serialize_graph(const FiniteGraph& g) {
  std::ostringstream out;
  out << "format " << text::kFormatVersion << "\n";
  out << "vertices " << g.vertex_count << "\n";
  for (const Edge& e : g.edges) out << "edge " << e.name << ' ' << e.tail << ' ' << e.head << "\n";
  return out.str();
}

EdgeAlphabet edge_alphabet(const FiniteGraph& g) {
  EdgeAlphabet a;
  for (const Edge& e : g.edges) {
    a.names.push_back(e.name);
    a.tails.push_back(e.tail);
    a.heads.push_back(e.head);
    a.names.push_back(e.name + "'");
    a.tails.push_back(e.head);
    a.heads.push_back(e.tail);
  }
  return a;
}

TransitionSystem graph_to_matrix(const FiniteGraph& g, Index base) {
  if (auto check = validate_graph(g); !check.ok) throw DomainError(check.error);
  if (base >= g.vertex_count) throw DomainError("base vertex out of range");
  const EdgeAlphabet a = edge_alphabet(g);
  std::vector<std::pair<Index, Index>> entries;
  for (Index x = 0; x < a.size(); ++x)
    for (Index y = 0; y < a.size(); ++y)
      if (a.heads[x] == a.tails[y] && y != EdgeAlphabet::reverse(x)) entries.emplace_back(y, x);

  TransitionSystem s;
  s.alphabet = a.names;
  s.matrices.push_back(BinaryMatrix::from_entries(a.size(), std::move(entries)));
  DecorationMap d;
  for (Index x = 0; x < a.size(); ++x)
    if (a.tails[x] == base) {
      d.names.push_back(a.names[x]);
      d.delta.push_back(x);
    }
  s.decoration = std::move(d);
  return s;
}

Simplicity ck_simplicity_check(const BinaryMatrix& m) {
  Simplicity s;
  TransitionSystem sys;
  sys.alphabet.resize(m.size());
  sys.matrices.push_back(m);
  s.irreducible = m.size() > 0 && words::strong_component_count(sys) == 1;
  s.permutation = m.size() > 0;
  for (Index i = 0; i < m.size(); ++i)
    s.permutation = s.permutation && m.row_sum(i) == 1 && m.column_sum(i) == 1;
  s.simple = s.irreducible && !s.permutation;
  if (!s.irreducible && s.permutation)
    s.reason = "reducible permutation matrix";
  else if (!s.irreducible)
    s.reason = "reducible";
  else if (s.permutation)
    s.reason = "permutation matrix";
  else
    s.reason = "irreducible and not a permutation matrix";
  return s;
}

}  // namespace hrck::rank1
