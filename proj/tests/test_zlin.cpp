#include "error.hpp"
#include "support.hpp"
#include "zlin.hpp"

#include <doctest.h>

#include <random>

using namespace hrck;
using namespace hrck::zlin;
using test::brute_force_order;
using test::determinant;
using test::diagonal;
using test::divisibility_chain;

namespace {

IntegerMatrix i_minus_transpose(const BinaryMatrix& m) {
  IntegerMatrix x = IntegerMatrix::identity(m.size());
  for (Index r = 0; r < m.size(); ++r)
    for (Index c = 0; c < m.size(); ++c)
      if (m.at(c, r)) x(r, c) -= 1;
  return x;
}

}  // namespace

TEST_CASE("Smith normal form examples") {
  const auto d = smith_normal_form(IntegerMatrix::from_rows({{2, 0}, {0, 3}}), true);
  CHECK(d.invariant_factors == IntegerVector{1, 6});
  CHECK(d.rank == 2);

  const auto z = smith_normal_form(IntegerMatrix(3, 2), true);
  CHECK(z.rank == 0);
  CHECK(z.invariant_factors.empty());

  const auto e = smith_normal_form(IntegerMatrix(0, 0), false);
  CHECK(e.rank == 0);

  const auto f = smith_normal_form(i_minus_transpose(test::bouquet_matrix()), false);
  CHECK(f.invariant_factors == IntegerVector{1, 1});
}

TEST_CASE("SNF oracle suite: minors, reconstruction, unimodularity") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 600; ++round) {
    const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    const auto x = test::random_matrix(rng, rows, cols, -3, 3);
    const auto d = smith_normal_form(x, true);
    CHECK(divisibility_chain(d.invariant_factors));
    Integer product = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
      const Integer g = test::minor_gcd(x, k);
      if (k <= d.rank) {
        CHECK(d.invariant_factors[k - 1] >= 1);
        product *= d.invariant_factors[k - 1];
        CHECK(product == g);
      } else {
        CHECK(g == 0);
      }
    }
    CHECK(*d.u * x * *d.v == diagonal(rows, cols, d.invariant_factors));
    CHECK(abs(determinant(*d.u)) == 1);
    CHECK(abs(determinant(*d.v)) == 1);
  }
}

TEST_CASE("element order examples") {
  CHECK(element_order_in_cokernel(IntegerMatrix::from_rows({{2, 0}, {0, 3}}), {0, 0}) == Order::finite(1));
  CHECK(element_order_in_cokernel(IntegerMatrix::from_rows({{2, 0}, {0, 3}}), {1, 1}) == Order::finite(6));
  CHECK(element_order_in_cokernel(IntegerMatrix::from_rows({{0, 0}, {0, 1}}), {1, 0}) == Order::infinite());
  CHECK_THROWS_AS(element_order_in_cokernel(IntegerMatrix(2, 2), {1}), DomainError);
}

TEST_CASE("element order agrees with brute-force multiple search") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> entry(-4, 4);
  int finite = 0;
  for (int round = 0; round < 500; ++round) {
    const auto x = test::random_matrix(rng, 4, 4, -4, 4);
    IntegerVector v(4);
    for (auto& e : v) e = entry(rng);
    const Order fast = element_order_in_cokernel(x, v);
    const Order slow = brute_force_order(x, v, 200);
    if (fast.is_finite() && fast.value() > 200) {
      CHECK_FALSE(slow.is_finite());
      continue;
    }
    CHECK(fast == slow);
    finite += fast.is_finite();
    // The sparse route must agree as well.
    const auto c = cokernel(SparseIntegerMatrix::from_dense(x), v);
    CHECK(c.order == fast);
  }
  CHECK(finite > 100);
}

TEST_CASE("sparse and dense cokernels agree") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 300; ++round) {
    const std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 10;
    auto x = test::random_matrix(rng, rows, cols, -2, 2);
    // Thin the matrix so the unit-pivot phase has work to do.
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (rng() % 3) x(r, c) = 0;
    const auto dense = cokernel(x);
    Options sparse_only;
    sparse_only.dense_threshold = 1.1;
    const auto sparse = cokernel(SparseIntegerMatrix::from_dense(x), std::nullopt, sparse_only);
    CHECK(sparse.group == dense);
    CHECK(sparse.rank == smith_normal_form(x, false).rank);
    Options no_sparse;
    no_sparse.sparse_phase = false;
    const auto direct = cokernel(SparseIntegerMatrix::from_dense(x), std::nullopt, no_sparse);
    CHECK(direct.group == dense);
    CHECK(direct.sparse_pivots == 0);
  }
}

TEST_CASE("cokernel examples") {
  CHECK(cokernel(IntegerMatrix::identity(5)).trivial());
  const auto g = cokernel(i_minus_transpose(test::bouquet_matrix()));
  CHECK(g == AbelianGroup::free(2));
  CHECK(cokernel(IntegerMatrix::from_rows({{2, 0}, {0, 3}})) == AbelianGroup(0, {6}));
  CHECK(cokernel(IntegerMatrix(2, 1)) == AbelianGroup::free(2));
}

TEST_CASE("int64 overflow falls back to exact arithmetic") {
  const Integer big("1000000000000000000000");
  IntegerMatrix x(2, 2);
  x(0, 0) = big;
  x(0, 1) = 3;
  x(1, 0) = 5;
  x(1, 1) = big + 1;
  const auto d = smith_normal_form(x, true);
  CHECK(d.used_bignum);
  CHECK(*d.u * x * *d.v == diagonal(2, 2, d.invariant_factors));
  CHECK(d.invariant_factors[0] * d.invariant_factors[1] == abs(big * (big + 1) - 15));

  // Entries that fit in int64 but whose elimination overflows.
  IntegerMatrix y = IntegerMatrix::from_rows({{3037000493L, 3037000499L}, {3037000453L, 3037000501L}});
  const auto e = smith_normal_form(y, true);
  CHECK(*e.u * y * *e.v == diagonal(2, 2, e.invariant_factors));
  CHECK(abs(determinant(y)) == e.invariant_factors[0] * e.invariant_factors[1]);
}

TEST_CASE("results do not depend on the thread count") {
  std::mt19937_64 rng(17);
  const auto x = test::random_matrix(rng, 40, 60, -2, 2);
  const auto one = smith_normal_form(x, true, Options{1});
  const auto four = smith_normal_form(x, true, Options{4});
  CHECK(one.invariant_factors == four.invariant_factors);
  CHECK(*one.u == *four.u);
  CHECK(*one.v == *four.v);
  CHECK(*one.u * x * *one.v == diagonal(40, 60, one.invariant_factors));
}

TEST_CASE("modular rank is a lower bound for the exact rank") {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 100; ++round) {
    const auto x = test::random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6, -3, 3);
    const auto r = smith_normal_form(x, false).rank;
    const auto s = SparseIntegerMatrix::from_dense(x);
    CHECK(modular_rank(s) <= r);
    CHECK(modular_rank(s, 2) <= r);
  }
  CHECK(modular_rank(SparseIntegerMatrix::from_dense(IntegerMatrix::from_rows({{2, 0}, {0, 2}})), 2) == 0);
}

TEST_CASE("sparse matrices accumulate entries") {
  SparseIntegerMatrix s(2, 2);
  s.add(0, 1, 3);
  s.add(0, 1, -3);
  s.add(1, 0, 2);
  CHECK(s.nonzeros() == 1);
  CHECK(s.to_dense() == IntegerMatrix::from_rows({{0, 0}, {2, 0}}));
  CHECK_THROWS_AS(s.add(2, 0, 1), DomainError);
}

TEST_CASE("abelian groups are canonical") {
  CHECK(AbelianGroup(0, {2, 3}) == AbelianGroup(0, {6}));
  CHECK(AbelianGroup(0, {4, 6}).torsion() == IntegerVector{2, 12});
  CHECK(AbelianGroup(1, {0, 1, -2}) == AbelianGroup(2, {2}));
  CHECK(AbelianGroup(0, {2, 2, 2, 2, 3}).torsion() == IntegerVector{2, 2, 2, 6});
  CHECK(AbelianGroup(0, {2, 2, 2, 6}).render() == "(Z/2)^4 (+) Z/3");
  CHECK(AbelianGroup(0, {2, 2, 2, 6}).render_invariant_factors() == "2,2,2,6");
  CHECK(AbelianGroup(2, {}).render() == "Z^2");
  CHECK(AbelianGroup(1, {}).render() == "Z");
  CHECK(AbelianGroup().render() == "0");
  CHECK(AbelianGroup(3, {12, 36}).render() == "Z^3 (+) (Z/4)^2 (+) Z/3 (+) Z/9");
  CHECK(AbelianGroup(0, {Integer("1000000000039") * 8}).render() == "Z/8 (+) Z/1000000000039");
  CHECK(AbelianGroup(0, {2, 2, 2, 6}).torsion_order() == 48);
}

TEST_CASE("group operations") {
  const auto z2 = AbelianGroup::free(2);
  CHECK(tensor(z2, z2) == AbelianGroup::free(4));
  CHECK(tensor(AbelianGroup(0, {2}), AbelianGroup(0, {3})).trivial());
  CHECK(tor_product(AbelianGroup(0, {2}), AbelianGroup(0, {3})).trivial());
  CHECK(tor_product(AbelianGroup(0, {4}), AbelianGroup(0, {6})) == AbelianGroup(0, {2}));
  CHECK(tor_product(AbelianGroup::free(3), AbelianGroup(0, {5})).trivial());
  CHECK(tensor(AbelianGroup(1, {2}), AbelianGroup(2, {4})) == AbelianGroup(2, {2, 2, 4, 2}));
  CHECK(direct_sum(AbelianGroup(1, {2}), AbelianGroup(0, {3})) == AbelianGroup(1, {6}));
}

TEST_CASE("orders render") {
  CHECK(Order::finite(6).to_string() == "6");
  CHECK(Order::infinite().to_string() == "infinite");
  CHECK(Order::not_computed().to_string() == "not-computed");
}
