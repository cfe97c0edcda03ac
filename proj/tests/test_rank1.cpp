#include "error.hpp"
#include "rank1.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace hrck;
using rank1::FiniteGraph;

namespace {

FiniteGraph load(const std::string& name) { return rank1::parse_graph(text::read_file(test::data_path(name))); }

FiniteGraph random_graph(std::mt19937_64& rng) {
  FiniteGraph g;
  g.vertex_count = 1 + rng() % 5;
  // A spanning path keeps the graph connected; extra edges and loops on top.
  for (Index v = 1; v < g.vertex_count; ++v) g.edges.push_back({"p" + std::to_string(v), v - 1, v});
  const std::size_t extra = 1 + rng() % 5;
  for (std::size_t k = 0; k < extra; ++k)
    g.edges.push_back({"e" + std::to_string(k), static_cast<Index>(rng() % g.vertex_count),
                       static_cast<Index>(rng() % g.vertex_count)});
  return g;
}

}  // namespace

TEST_CASE("bouquet of two loops gives the free-group matrix") {
  const auto s = rank1::graph_to_matrix(load("f2bouquet.g"));
  CHECK(s.alphabet == std::vector<std::string>{"a", "a'", "b", "b'"});
  CHECK(s.matrix(0) == test::bouquet_matrix());
  REQUIRE(s.decoration.has_value());
  CHECK(s.decoration->delta.size() == 4);
}

TEST_CASE("two vertices with three edges give the reference 6x6 matrix") {
  const auto s = rank1::graph_to_matrix(load("threeedge.g"));
  CHECK(s.alphabet == std::vector<std::string>{"a", "a'", "b", "b'", "c", "c'"});
  CHECK(s.matrix(0) == test::three_edge_matrix());
  REQUIRE(s.decoration.has_value());
  CHECK(s.decoration->names == std::vector<std::string>{"a", "b", "c"});
  CHECK(s.decoration->total(6));
}

TEST_CASE("a single loop gives the identity") {
  FiniteGraph g;
  g.vertex_count = 1;
  g.edges.push_back({"a", 0, 0});
  CHECK(rank1::graph_to_matrix(g).matrix(0) == BinaryMatrix::identity(2));
  const auto check = rank1::validate_graph(g);
  CHECK(check.ok);
  CHECK(check.warnings.size() == 1);  // degree 2
}

TEST_CASE("no-backtracking matrix invariants on random graphs") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 100; ++round) {
    const auto g = random_graph(rng);
    const auto s = rank1::graph_to_matrix(g);
    const auto a = rank1::edge_alphabet(g);
    const auto& m = s.matrix(0);
    const auto deg = g.degrees();
    std::size_t expected_nonzeros = 0;
    for (std::size_t d : deg) expected_nonzeros += d * (d - 1);
    CHECK(m.nonzeros() == expected_nonzeros);
    for (Index x = 0; x < a.size(); ++x) {
      CHECK(rank1::EdgeAlphabet::reverse(x) != x);
      CHECK(rank1::EdgeAlphabet::reverse(rank1::EdgeAlphabet::reverse(x)) == x);
      CHECK(m.column_sum(x) == deg[a.heads[x]] - 1);
      for (Index y = 0; y < a.size(); ++y)
        CHECK(m.at(y, x) == m.at(rank1::EdgeAlphabet::reverse(x), rank1::EdgeAlphabet::reverse(y)));
    }
  }
}

TEST_CASE("graph validation") {
  FiniteGraph g;
  g.vertex_count = 3;
  g.edges = {{"a", 0, 1}, {"b", 0, 1}, {"c", 0, 1}};
  const auto r = rank1::validate_graph(g);
  CHECK_FALSE(r.ok);
  CHECK(r.error == "graph is disconnected at vertex 2");
  CHECK_THROWS_AS(rank1::graph_to_matrix(g), DomainError);
  CHECK(rank1::validate_graph(load("threeedge.g")).warnings.empty());
}

TEST_CASE("graph files parse strictly and round-trip") {
  CHECK_THROWS_AS(rank1::parse_graph("edge a 0 0\n"), ParseError);
  CHECK_THROWS_AS(rank1::parse_graph("vertices 1\nedge a 0 1\n"), ParseError);
  CHECK_THROWS_AS(rank1::parse_graph("vertices 1\nedge a 0 0\nedge a 0 0\n"), ParseError);
  CHECK_THROWS_AS(rank1::parse_graph("vertices 1\nloop a 0\n"), ParseError);
  const auto g = load("threeedge.g");
  const auto again = rank1::parse_graph(rank1::serialize_graph(g));
  CHECK(again.vertex_count == 2);
  CHECK(again.edges.size() == 3);
  CHECK(again.edges[2].name == "c");
}

TEST_CASE("simplicity: irreducible and not a permutation") {
  CHECK(rank1::ck_simplicity_check(test::bouquet_matrix()).simple);
  CHECK(rank1::ck_simplicity_check(test::three_edge_matrix()).simple);
  const auto id = rank1::ck_simplicity_check(BinaryMatrix::identity(3));
  CHECK_FALSE(id.simple);
  CHECK(id.permutation);
  CHECK_FALSE(id.irreducible);
  const auto cycle = rank1::ck_simplicity_check(BinaryMatrix::from_dense({{0, 1}, {1, 0}}));
  CHECK(cycle.irreducible);
  CHECK(cycle.permutation);
  CHECK_FALSE(cycle.simple);
}
