#include "error.hpp"
#include "support.hpp"
#include "tiles.hpp"
#include "words.hpp"

#include <doctest.h>

#include <map>

using namespace hrck;
using words::Cell;
using words::Shape;
using words::Verdict;
using words::Word;

namespace {

const tiles::BuildingSystem& c1_building() {
  static const tiles::BuildingSystem b = tiles::build_building_system(test::c1());
  return b;
}

std::vector<Shape> shapes_up_to(std::int64_t a, std::int64_t b) {
  std::vector<Shape> out;
  for (std::int64_t i = 0; i <= a; ++i)
    for (std::int64_t j = 0; j <= b; ++j) out.push_back(Shape{i, j});
  return out;
}

TransitionSystem rank1_system(const BinaryMatrix& m) {
  TransitionSystem s;
  s.alphabet.resize(m.size());
  s.matrices.push_back(m);
  return s;
}

}  // namespace

TEST_CASE("shapes and cell addressing") {
  const Shape s{2, 1};
  CHECK(s.cell_count() == 6);
  CHECK(s + Shape{1, 1} == Shape{3, 2});
  const Word w(s, {0, 1, 2, 3, 4, 5});
  CHECK(w.at({0, 1}) == 1);
  CHECK(w.at({2, 0}) == 4);
  CHECK(w.cell(5) == Cell{2, 1});
  CHECK(w.origin() == 0);
  CHECK(w.terminal() == 5);
  CHECK(words::to_string(s) == "(2,1)");
  CHECK_THROWS(Word(s, {0, 1}));
}

TEST_CASE("count_words(1,0) on C.1 is 168") {
  CHECK(words::count_words(c1_building().system, Shape{1, 0}) == 168);
  CHECK(words::count_words(c1_building().system, Shape{0, 0}) == 42);
  CHECK(words::count_words(c1_building().system, Shape{2, 2}) == 42 * 256);
}

TEST_CASE("count_words equals exhaustive enumeration for shapes up to (2,2)") {
  const auto& s = c1_building().system;
  for (const Shape& m : shapes_up_to(2, 2)) {
    const auto e = words::enumerate_words(s, m);
    CHECK_FALSE(e.truncated);
    CHECK(words::count_words(s, m) == e.words.size());
    for (const Word& w : e.words) CHECK(words::validate_word(w, s).ok);
    CHECK(std::is_sorted(e.words.begin(), e.words.end()));
  }
}

TEST_CASE("enumeration respects its bound") {
  const auto e = words::enumerate_words(c1_building().system, Shape{2, 2}, 100);
  CHECK(e.truncated);
  CHECK(e.words.size() == 100);
}

TEST_CASE("word products exist and are unique for composable pairs up to (1,1)") {
  const auto& s = c1_building().system;
  const auto small = shapes_up_to(1, 1);
  for (const Shape& m : small)
    for (const Shape& n : small) {
      const Shape total = m + n;
      const Cell corner(m.dims());
      Cell end = total.dims();
      // Restrictions of every word of the combined shape, counted per pair.
      std::map<std::pair<std::vector<Index>, std::vector<Index>>, std::vector<Word>> split;
      for (const Word& w : words::enumerate_words(s, total).words) {
        const Word u = words::restrict(w, Cell{0, 0}, corner);
        const Word v = words::restrict(w, corner, end);
        split[{u.letters(), v.letters()}].push_back(w);
      }
      const auto us = words::enumerate_words(s, m).words;
      const auto vs = words::enumerate_words(s, n).words;
      std::size_t pairs = 0;
      for (const Word& u : us)
        for (const Word& v : vs) {
          if (u.terminal() != v.origin()) continue;
          ++pairs;
          const auto it = split.find({u.letters(), v.letters()});
          REQUIRE(it != split.end());
          REQUIRE(it->second.size() == 1);
          CHECK(words::product(u, v, s) == it->second.front());
        }
      CHECK(pairs == split.size());
    }
}

TEST_CASE("product rejects non-composable pairs") {
  const auto& s = c1_building().system;
  const Word u = Word::letter(0, 2);
  const Word v = Word::letter(1, 2);
  CHECK_THROWS_AS(words::product(u, v, s), DomainError);
}

TEST_CASE("rank-1 product is concatenation") {
  const auto s = rank1_system(test::bouquet_matrix());
  const Word u(Shape{1}, {0, 2});
  const Word v(Shape{1}, {2, 0});
  CHECK(words::product(u, v, s) == Word(Shape{2}, {0, 2, 0}));
  // b followed by its reverse backtracks.
  CHECK_THROWS_AS(words::product(u, Word(Shape{1}, {2, 3}), s), DomainError);
}

TEST_CASE("restriction, translation and periodicity") {
  const Word w(Shape{3}, {0, 1, 0, 1});
  CHECK(words::restrict(w, {1}, {2}) == Word(Shape{1}, {1, 0}));
  CHECK_THROWS_AS(words::restrict(w, {2}, {1}), DomainError);
  const auto t = words::translate(w, {5});
  CHECK(t.offset == Cell{5});
  CHECK(t.word == w);
  CHECK(words::is_p_periodic(w, {2}));
  CHECK(words::is_p_periodic(w, {-2}));
  CHECK_FALSE(words::is_p_periodic(w, {1}));
  CHECK(words::is_p_periodic(w, {4}));  // no overlap
  CHECK_THROWS_AS(words::is_p_periodic(w, {0}), DomainError);
}

TEST_CASE("C.1 passes every condition") {
  const auto r = words::check_conditions(c1_building().system);
  CHECK(r.all_pass());
  CHECK(r.get("H0").verdict == Verdict::Pass);
  CHECK(r.get("H1a").verdict == Verdict::Pass);
  CHECK(r.get("H1b").verdict == Verdict::Pass);
  CHECK(r.get("H1c").verdict == Verdict::Vacuous);
  CHECK(r.get("H2").verdict == Verdict::Pass);
  CHECK(r.get("H3").verdict == Verdict::Pass);
  CHECK(words::reachable_both_ways_from_zero(c1_building().system));
  CHECK(words::strong_component_count(c1_building().system) == 1);
}

TEST_CASE("failing conditions are named with witnesses") {
  SUBCASE("identity pair fails H2 and H3") {
    TransitionSystem s;
    s.alphabet = {"a", "b"};
    s.matrices = {BinaryMatrix::identity(2), BinaryMatrix::identity(2)};
    const auto r = words::check_conditions(s);
    CHECK_FALSE(r.all_pass());
    CHECK(r.get("H2").verdict == Verdict::Fail);
    CHECK(r.get("H2").witness == "2_strong_components");
    CHECK(r.get("H3").verdict == Verdict::Fail);
    CHECK_FALSE(words::reachable_both_ways_from_zero(s));
  }
  SUBCASE("zero matrix fails H0") {
    const auto r = words::check_conditions(rank1_system(BinaryMatrix(3)));
    CHECK(r.get("H0").verdict == Verdict::Fail);
  }
  SUBCASE("non-commuting pair fails H1a") {
    TransitionSystem s;
    s.alphabet = {"a", "b"};
    s.matrices = {BinaryMatrix::from_dense({{0, 1}, {0, 0}}), BinaryMatrix::from_dense({{0, 0}, {1, 0}})};
    const auto r = words::check_conditions(s);
    CHECK(r.get("H1a").verdict == Verdict::Fail);
    CHECK_FALSE(words::matrices_commute(s));
    try {
      words::count_words(s, Shape{1, 1});
      FAIL("expected refusal");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Refused);
    }
  }
  SUBCASE("products with entries above 1 fail H1b") {
    TransitionSystem s;
    s.alphabet = {"a", "b"};
    const auto ones = BinaryMatrix::from_dense({{1, 1}, {1, 1}});
    s.matrices = {ones, ones};
    CHECK(words::check_conditions(s).get("H1b").verdict == Verdict::Fail);
  }
  SUBCASE("a cycle is periodic") {
    const auto r = words::check_conditions(rank1_system(BinaryMatrix::from_dense({{0, 1}, {1, 0}})));
    CHECK(r.get("H2").verdict == Verdict::Pass);
    CHECK(r.get("H3").verdict == Verdict::Fail);
  }
}

TEST_CASE("strong components against forward/backward reachability on random graphs") {
  std::mt19937_64 rng(11);
  std::bernoulli_distribution edge(0.15);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 2 + round % 9;
    std::vector<std::vector<int>> d(n, std::vector<int>(n));
    for (auto& row : d)
      for (int& x : row) x = edge(rng);
    const auto s = rank1_system(BinaryMatrix::from_dense(d));
    CHECK((words::strong_component_count(s) == 1) == words::reachable_both_ways_from_zero(s));
  }
}

TEST_CASE("rendered condition lines") {
  const auto text = words::check_conditions(c1_building().system).render();
  CHECK(text.find("condition=H0 verdict=pass witness=-\n") == 0);
  CHECK(text.find("condition=H1c verdict=vacuous witness=rank_2") != std::string::npos);
}
