#include "ktheory.hpp"

#include "error.hpp"

#include <algorithm>
#include <future>

namespace hrck::ktheory {

using zlin::AbelianGroup;
using zlin::Integer;
using zlin::IntegerVector;
using zlin::Order;

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Observed: return "observed";
    case Status::NotObserved: return "not-observed";
    case Status::NotApplicable: break;
  }
  return "n/a";
}

const Diagnostic* KTheoryResult::find(const std::string& name) const {
  for (const auto& d : diagnostics)
    if (d.name == name) return &d;
  return nullptr;
}

bool KTheoryResult::diagnostics_pass() const {
  return std::none_of(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic& d) { return d.status == Status::Fail; });
}

namespace {

IntegerVector ones(std::size_t n) { return IntegerVector(n, Integer(1)); }

std::vector<Integer> prime_divisors(Integer n) {
  std::vector<Integer> out;
  for (Integer p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// v lies in the column span of X exactly when appending it leaves the
// cokernel unchanged (finitely generated abelian groups are Hopfian).
bool in_span(const zlin::SparseIntegerMatrix& x, const AbelianGroup& coker, const IntegerVector& v,
             const zlin::Options& options) {
  zlin::SparseIntegerMatrix extended(x.rows(), x.cols() + 1);
  for (std::size_t c = 0; c < x.cols(); ++c)
    for (const auto& [r, value] : x.column(c)) extended.add(r, c, value);
  for (std::size_t r = 0; r < v.size(); ++r) extended.add(r, x.cols(), v[r]);
  return zlin::cokernel(extended, std::nullopt, options).group == coker;
}

// k [1] = 0 and (k/p) [1] != 0 for every prime p | k, checked directly.
Diagnostic verify_identity_order(const zlin::SparseIntegerMatrix& x, const zlin::Cokernel& c,
                                 const zlin::Options& options) {
  Diagnostic d{"identity_order_verified", Status::NotApplicable, "order is not finite"};
  if (!c.order.is_finite()) return d;
  const Integer& k = c.order.value();
  auto multiple = [&](const Integer& m) {
    IntegerVector v = ones(x.rows());
    for (auto& e : v) e = m;
    return v;
  };
  if (!in_span(x, c.group, multiple(k), options))
    throw ConsistencyError("identity order " + k.get_str() + " does not annihilate [1]");
  for (const Integer& p : prime_divisors(k))
    if (in_span(x, c.group, multiple(k / p), options))
      throw ConsistencyError("identity order " + k.get_str() + " is not minimal");
  d.status = Status::Pass;
  d.detail = "k[1]=0 and no proper divisor annihilates [1]";
  return d;
}

}  // namespace

KTheoryResult k_theory_rank1(const BinaryMatrix& m, const zlin::Options& options) {
  const auto x = zlin::identity_minus_blocks({&m}, true);
  const auto c = zlin::cokernel(x, ones(m.size()), options);
  KTheoryResult r;
  r.k0 = c.group;
  r.k1 = AbelianGroup::free(m.size() - c.rank);
  r.identity_order = c.order;
  if (r.k0.free_rank() != r.k1.free_rank())
    throw ConsistencyError("rank-1 K-groups have different free ranks");
  return r;
}

BlockCokernels block_cokernels(const BinaryMatrix& m1, const BinaryMatrix& m2, const zlin::Options& options) {
  if (m1.size() != m2.size()) throw DomainError("M1 and M2 have different dimensions");
  const auto first = zlin::identity_minus_blocks({&m1, &m2}, false);
  const auto second = zlin::identity_minus_blocks({&m1, &m2}, true);
  const IntegerVector unit = ones(m1.size());
  if (options.threads > 1) {
    zlin::Options half = options;
    half.threads = std::max(1u, options.threads / 2);
    auto pending = std::async(std::launch::async, [&] { return zlin::cokernel(second, std::nullopt, half); });
    zlin::Cokernel a = zlin::cokernel(first, unit, half);
    return {std::move(a), pending.get()};
  }
  return {zlin::cokernel(first, unit, options), zlin::cokernel(second, std::nullopt, options)};
}

namespace {

KTheoryResult rank2_from(const BlockCokernels& c) {
  KTheoryResult r;
  const std::size_t rank = c.first.group.free_rank() + c.second.group.free_rank();
  r.k0 = AbelianGroup(rank, c.first.group.torsion());
  r.k1 = AbelianGroup(rank, c.second.group.torsion());
  r.identity_order = c.first.order;
  return r;
}

void gate(const TransitionSystem& system, const Rank2Options& options, const words::ConditionReport* precomputed,
          KTheoryResult& r) {
  const words::ConditionReport report = precomputed ? *precomputed : words::check_conditions(system, options.conditions);
  if (report.all_pass()) return;
  std::string failing;
  for (const auto& c : report.results)
    if (c.verdict == words::Verdict::Fail || c.verdict == words::Verdict::Inconclusive)
      failing += (failing.empty() ? "" : ",") + c.name;
  if (!options.override_conditions)
    throw Error(ErrorKind::Refused, "conditions not satisfied: " + failing);
  r.diagnostics.push_back({"conditions_overridden", Status::Observed, failing});
}

}  // namespace

KTheoryResult k_theory_rank2(const TransitionSystem& system, const Rank2Options& options,
                             const words::ConditionReport* precomputed) {
  if (system.rank() != 2) throw DomainError("rank-2 K-theory needs exactly two matrices");
  KTheoryResult gated;
  gate(system, options, precomputed, gated);
  const auto blocks = block_cokernels(system.matrix(0), system.matrix(1), options.linear);
  KTheoryResult r = rank2_from(blocks);
  r.diagnostics = std::move(gated.diagnostics);
  r.diagnostics.push_back(verify_identity_order(
      zlin::identity_minus_blocks({&system.matrix(0), &system.matrix(1)}, false), blocks.first, options.linear));
  return r;
}

KTheoryResult k_theory_rank2(const BinaryMatrix& m1, const BinaryMatrix& m2, const Rank2Options& options) {
  if (m1.size() != m2.size()) throw DomainError("M1 and M2 have different dimensions");
  TransitionSystem s;
  s.alphabet.resize(m1.size());
  s.matrices = {m1, m2};
  return k_theory_rank2(s, options);
}

KTheoryResult building_k_theory(const tiles::BuildingSystem& building, const Rank2Options& options,
                                const words::ConditionReport* precomputed) {
  const TransitionSystem& s = building.system;
  KTheoryResult gated;
  gate(s, options, precomputed, gated);
  const auto blocks = block_cokernels(s.matrix(0), s.matrix(1), options.linear);
  const KTheoryResult proposition = rank2_from(blocks);

  KTheoryResult r;
  const std::size_t n = blocks.first.group.free_rank();
  r.k0 = AbelianGroup(2 * n, blocks.first.group.torsion());
  r.k1 = r.k0;
  r.identity_order = blocks.first.order;
  r.diagnostics = std::move(gated.diagnostics);

  const bool symmetric = blocks.first.group.torsion_part() == blocks.second.group.torsion_part() &&
                         blocks.first.group.free_rank() == blocks.second.group.free_rank();
  if (!symmetric || proposition.k0 != r.k0 || proposition.k1 != r.k1)
    throw ConsistencyError("building K-theory disagrees with the block formula: tor(first)=" +
                           blocks.first.group.render() + " tor(second)=" + blocks.second.group.render());
  r.diagnostics.push_back({"building_k0_eq_k1", Status::Pass,
                           "tor(coker[I-M1|I-M2]) = tor(coker[I-M1^t|I-M2^t]) = " +
                               blocks.first.group.torsion_part().render()});

  const long q = building.presentation.q();
  const Integer q2m1 = Integer(q * q - 1);
  const bool third = q % 3 == 1;
  const Integer rule = third ? Integer((q - 1) / 3) : Integer(q - 1);
  const Order& order = r.identity_order;
  auto verdict = [](bool ok) { return ok ? Status::Pass : Status::Fail; };

  r.diagnostics.push_back(
      {"order_divides_q2_minus_1", verdict(order.is_finite() && q2m1 % order.value() == 0),
       "q^2-1=" + q2m1.get_str() + " order=" + order.to_string()});
  r.diagnostics.push_back({"order_multiple_of_q_minus_1_rule",
                           verdict(order.is_finite() && order.value() % rule == 0),
                           std::string(third ? "(q-1)/3=" : "q-1=") + rule.get_str() + " order=" + order.to_string()});
  if (q == 2 || q == 4)
    r.diagnostics.push_back({"nonzero_identity_class", Status::NotApplicable, "q=" + std::to_string(q)});
  else
    r.diagnostics.push_back({"nonzero_identity_class", verdict(order.is_finite() && order.value() > 1),
                             "order=" + order.to_string()});
  // Reported only; equality with the rule is an empirical pattern, not a theorem.
  r.diagnostics.push_back({"order_equals_rule", order.is_finite() && order.value() == rule ? Status::Observed
                                                                                            : Status::NotObserved,
                           "rule=" + rule.get_str() + " order=" + order.to_string()});
  r.diagnostics.push_back(verify_identity_order(
      zlin::identity_minus_blocks({&s.matrix(0), &s.matrix(1)}, false), blocks.first, options.linear));
  return r;
}

TransitionSystem tensor_system(const TransitionSystem& a, const TransitionSystem& b) {
  if (a.rank() != 1 || b.rank() != 1) throw DomainError("tensor systems are built from two rank-1 systems");
  TransitionSystem s;
  for (const auto& x : a.alphabet)
    for (const auto& y : b.alphabet) s.alphabet.push_back("(" + x + "," + y + ")");
  s.matrices.push_back(kronecker(a.matrix(0), BinaryMatrix::identity(b.size())));
  s.matrices.push_back(kronecker(BinaryMatrix::identity(a.size()), b.matrix(0)));
  return s;
}

KunnethPrediction kunneth_predict(const KTheoryResult& a, const KTheoryResult& b) {
  using zlin::direct_sum;
  using zlin::tensor;
  using zlin::tor_product;
  KunnethPrediction p;
  p.k0_tor = direct_sum(tor_product(a.k0, b.k1), tor_product(a.k1, b.k0));
  p.k1_tor = direct_sum(tor_product(a.k0, b.k0), tor_product(a.k1, b.k1));
  if (p.k0_tor.trivial()) p.k0 = direct_sum(tensor(a.k0, b.k0), tensor(a.k1, b.k1));
  if (p.k1_tor.trivial()) p.k1 = direct_sum(tensor(a.k0, b.k1), tensor(a.k1, b.k0));
  return p;
}

void attach_kunneth(KTheoryResult& computed, const KunnethPrediction& prediction) {
  if (!prediction.k0 || !prediction.k1) {
    std::string detail = "prediction has unresolved extension:";
    if (!prediction.k0) detail += " K0 Tor=" + prediction.k0_tor.render();
    if (!prediction.k1) detail += " K1 Tor=" + prediction.k1_tor.render();
    computed.diagnostics.push_back({"kunneth", Status::NotApplicable, detail});
    return;
  }
  const bool ok = *prediction.k0 == computed.k0 && *prediction.k1 == computed.k1;
  computed.diagnostics.push_back({"kunneth", ok ? Status::Pass : Status::Fail,
                                  "predicted K0=" + prediction.k0->render() + " K1=" + prediction.k1->render()});
}

}  // namespace hrck::ktheory
