#include "error.hpp"
#include "ktheory.hpp"
#include "rank1.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace hrck;
using ktheory::Status;
using zlin::AbelianGroup;
using zlin::Order;

namespace {

TransitionSystem rank1_system(const BinaryMatrix& m) {
  TransitionSystem s;
  for (Index i = 0; i < m.size(); ++i) s.alphabet.push_back(std::to_string(i));
  s.matrices.push_back(m);
  return s;
}

const AbelianGroup c1_group(0, {2, 2, 2, 6});

}  // namespace

TEST_CASE("rank-1 K-theory of the graph examples") {
  for (const auto& m : {test::bouquet_matrix(), test::three_edge_matrix()}) {
    const auto k = ktheory::k_theory_rank1(m);
    CHECK(k.k0 == AbelianGroup::free(2));
    CHECK(k.k1 == AbelianGroup::free(2));
  }
  const auto ones = ktheory::k_theory_rank1(BinaryMatrix::from_dense({{1, 1}, {1, 1}}));
  CHECK(ones.k0.trivial());
  CHECK(ones.k1.trivial());
}

TEST_CASE("rank-1 K-theory of the full shift on n letters") {
  for (std::size_t n = 2; n <= 7; ++n) {
    std::vector<std::vector<int>> d(n, std::vector<int>(n, 1));
    const auto k = ktheory::k_theory_rank1(BinaryMatrix::from_dense(d));
    // coker(1 - J) = Z/(n-1) via the coordinate sum, which sends [1] to
    // n = 1, a generator.
    CHECK(k.k0 == AbelianGroup(0, {zlin::Integer(n - 1)}));
    CHECK(k.k1.trivial());
    CHECK(k.identity_order == Order::finite(static_cast<unsigned long>(n - 1)));
  }
}

TEST_CASE("identity order in the rank-1 free-group example") {
  CHECK(ktheory::k_theory_rank1(test::bouquet_matrix()).identity_order == Order::finite(1));
}

TEST_CASE("rank-2 K-theory of C.1") {
  const auto b = tiles::build_building_system(test::c1());
  const auto k = ktheory::k_theory_rank2(b.system);
  CHECK(k.k0 == c1_group);
  CHECK(k.k1 == c1_group);
  CHECK(k.k0.free_rank() == 0);
  CHECK(k.identity_order == Order::finite(1));
  REQUIRE(k.find("identity_order_verified"));
  CHECK(k.find("identity_order_verified")->status == Status::Pass);
}

TEST_CASE("building K-theory of C.1 with diagnostics") {
  const auto b = tiles::build_building_system(test::c1());
  const auto k = ktheory::building_k_theory(b);
  CHECK(k.k0 == c1_group);
  CHECK(k.k1 == k.k0);
  CHECK(k.k0.render() == "(Z/2)^4 (+) Z/3");
  CHECK(k.identity_order == Order::finite(1));
  CHECK(k.diagnostics_pass());
  CHECK(k.find("building_k0_eq_k1")->status == Status::Pass);
  CHECK(k.find("order_divides_q2_minus_1")->status == Status::Pass);
  CHECK(k.find("order_multiple_of_q_minus_1_rule")->status == Status::Pass);
  CHECK(k.find("nonzero_identity_class")->status == Status::NotApplicable);
  CHECK(k.find("order_equals_rule")->status == Status::Observed);
}

TEST_CASE("both block cokernels of C.1 have the same torsion") {
  const auto b = tiles::build_building_system(test::c1());
  const auto c = ktheory::block_cokernels(b.system.matrix(0), b.system.matrix(1), {});
  CHECK(c.first.group == c1_group);
  CHECK(c.second.group == c1_group);
  zlin::Options threaded;
  threaded.threads = 4;
  const auto t = ktheory::block_cokernels(b.system.matrix(0), b.system.matrix(1), threaded);
  CHECK(t.first.group == c.first.group);
  CHECK(t.second.group == c.second.group);
  CHECK(t.first.order == c.first.order);
}

TEST_CASE("identity order matches the dense SNF route on C.1") {
  const auto b = tiles::build_building_system(test::c1());
  const auto x = zlin::identity_minus_blocks({&b.system.matrix(0), &b.system.matrix(1)}, false);
  const auto dense = zlin::element_order_in_cokernel(x.to_dense(), zlin::IntegerVector(42, 1));
  CHECK(dense == Order::finite(1));
  // [1] = 0 means the all-ones vector is an integer combination of columns.
  CHECK(test::in_lattice(test::column_echelon(x.to_dense()), zlin::IntegerVector(42, 1)));
}

TEST_CASE("tensor system of the free-group matrix") {
  const auto a = rank1_system(test::bouquet_matrix());
  const auto t = ktheory::tensor_system(a, a);
  CHECK(t.size() == 16);
  CHECK(t.rank() == 2);
  CHECK(t.alphabet[5] == "(1,1)");
  CHECK(words::matrices_commute(t));
  CHECK(words::check_conditions(t).all_pass());
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      for (Index k = 0; k < 4; ++k)
        for (Index l = 0; l < 4; ++l) {
          CHECK(t.matrix(0).at(i * 4 + j, k * 4 + l) == (a.matrix(0).at(i, k) && j == l));
          CHECK(t.matrix(1).at(i * 4 + j, k * 4 + l) == (i == k && a.matrix(0).at(j, l)));
        }

  auto k = ktheory::k_theory_rank2(t);
  CHECK(k.k0 == AbelianGroup::free(8));
  CHECK(k.k1 == AbelianGroup::free(8));
  const auto ka = ktheory::k_theory_rank1(a.matrix(0));
  const auto prediction = ktheory::kunneth_predict(ka, ka);
  REQUIRE(prediction.k0);
  CHECK(*prediction.k0 == AbelianGroup::free(8));
  ktheory::attach_kunneth(k, prediction);
  CHECK(k.find("kunneth")->status == Status::Pass);
}

TEST_CASE("Kunneth with torsion when the Tor terms vanish") {
  // Full shift on 3 letters: K0 = Z/2, K1 = 0.
  const auto j3 = rank1_system(BinaryMatrix::from_dense({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}));
  const auto f2 = rank1_system(test::bouquet_matrix());
  const auto ka = ktheory::k_theory_rank1(j3.matrix(0));
  const auto kb = ktheory::k_theory_rank1(f2.matrix(0));
  const auto prediction = ktheory::kunneth_predict(ka, kb);
  REQUIRE(prediction.k0);
  REQUIRE(prediction.k1);
  CHECK(*prediction.k0 == AbelianGroup(0, {2, 2}));
  CHECK(*prediction.k1 == AbelianGroup(0, {2, 2}));
  ktheory::Rank2Options opts;
  opts.override_conditions = true;  // H1b fails for the full shift
  auto k = ktheory::k_theory_rank2(ktheory::tensor_system(j3, f2), opts);
  ktheory::attach_kunneth(k, prediction);
  CHECK(k.find("kunneth")->status == Status::Pass);
}

TEST_CASE("Kunneth predictions") {
  ktheory::KTheoryResult z2;
  z2.k0 = z2.k1 = AbelianGroup::free(2);
  const auto p = ktheory::kunneth_predict(z2, z2);
  CHECK(*p.k0 == AbelianGroup::free(8));
  CHECK(*p.k1 == AbelianGroup::free(8));

  // (Z^2n + T, Z^2n + T) against (Z, Z) gives Z^4n + T + T in each degree.
  ktheory::KTheoryResult a, b;
  a.k0 = a.k1 = AbelianGroup(2, {2, 2, 2, 6});
  b.k0 = b.k1 = AbelianGroup::free(1);
  const auto q = ktheory::kunneth_predict(a, b);
  REQUIRE(q.k0);
  REQUIRE(q.k1);
  CHECK(*q.k0 == AbelianGroup(4, {2, 2, 2, 6, 2, 2, 2, 6}));
  CHECK(*q.k1 == *q.k0);

  // Torsion meeting torsion leaves the extension open.
  ktheory::KTheoryResult t;
  t.k0 = AbelianGroup(0, {2});
  t.k1 = AbelianGroup(0, {});
  const auto r = ktheory::kunneth_predict(t, t);
  CHECK(r.k0.has_value());
  CHECK_FALSE(r.k1.has_value());
  CHECK(r.k1_tor == AbelianGroup(0, {2}));
  ktheory::KTheoryResult computed;
  ktheory::attach_kunneth(computed, r);
  CHECK(computed.find("kunneth")->status == Status::NotApplicable);
  CHECK(computed.find("kunneth")->detail.find("unresolved") != std::string::npos);
}

TEST_CASE("rank-2 K-theory is refused when conditions fail") {
  const auto id = BinaryMatrix::identity(2);
  try {
    ktheory::k_theory_rank2(id, id);
    FAIL("expected refusal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Refused);
    CHECK(std::string(e.what()).find("H2") != std::string::npos);
  }
  ktheory::Rank2Options opts;
  opts.override_conditions = true;
  const auto k = ktheory::k_theory_rank2(id, id, opts);
  CHECK(k.find("conditions_overridden")->status == Status::Observed);
  CHECK(k.k0 == AbelianGroup::free(4));
  CHECK_THROWS_AS(ktheory::k_theory_rank2(id, BinaryMatrix::identity(3)), DomainError);
}

TEST_CASE("free ranks agree for every rank-2 result") {
  std::mt19937_64 rng(21);
  std::bernoulli_distribution bit(0.4);
  ktheory::Rank2Options opts;
  opts.override_conditions = true;
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 2 + rng() % 5;
    std::vector<std::vector<int>> a(n, std::vector<int>(n)), b = a;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] = bit(rng);
        b[i][j] = bit(rng);
      }
    const auto k = ktheory::k_theory_rank2(BinaryMatrix::from_dense(a), BinaryMatrix::from_dense(b), opts);
    CHECK(k.k0.free_rank() == k.k1.free_rank());
  }
}
