#pragma once

#include "tiles.hpp"
#include "words.hpp"
#include "zlin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hrck::ktheory {

enum class Status { Pass, Fail, Observed, NotObserved, NotApplicable };

const char* to_string(Status s);

struct Diagnostic {
  std::string name;
  Status status = Status::NotApplicable;
  std::string detail;
};

struct KTheoryResult {
  zlin::AbelianGroup k0;
  zlin::AbelianGroup k1;
  zlin::Order identity_order = zlin::Order::not_computed();
  std::vector<Diagnostic> diagnostics;

  const Diagnostic* find(const std::string& name) const;
  // No diagnostic reports Fail.
  bool diagnostics_pass() const;
};

// K0 = coker(I - M^t), K1 = Z^(n - rank(I - M^t)); [1] is the all-ones vector.
KTheoryResult k_theory_rank1(const BinaryMatrix& m, const zlin::Options& options = {});

struct Rank2Options {
  zlin::Options linear;
  words::ConditionOptions conditions;
  // Compute even when the H-checks do not all pass; recorded as a diagnostic.
  bool override_conditions = false;
};

// Cokernels of both block matrices, computed once and shared by the rank-2
// and building formulas.
struct BlockCokernels {
  zlin::Cokernel first;   // [I - M1 | I - M2], with the order of [1]
  zlin::Cokernel second;  // [I - M1^t | I - M2^t]
};

BlockCokernels block_cokernels(const BinaryMatrix& m1, const BinaryMatrix& m2, const zlin::Options& options);

// Refuses (ErrorKind::Refused) when the H-checks fail and no override is set.
KTheoryResult k_theory_rank2(const TransitionSystem& system, const Rank2Options& options = {},
                             const words::ConditionReport* precomputed = nullptr);
KTheoryResult k_theory_rank2(const BinaryMatrix& m1, const BinaryMatrix& m2, const Rank2Options& options = {});

// K0 = K1 = Z^(2n) + tor(coker[I - M1 | I - M2]), cross-checked against the
// rank-2 formula; disagreement raises ConsistencyError. Adds the divisibility
// diagnostics for the order of [1] in terms of q.
KTheoryResult building_k_theory(const tiles::BuildingSystem& building, const Rank2Options& options = {},
                                const words::ConditionReport* precomputed = nullptr);

// M1 = A (x) I, M2 = I (x) B on pairs (i, j) -> i * |B| + j.
TransitionSystem tensor_system(const TransitionSystem& a, const TransitionSystem& b);

struct KunnethPrediction {
  std::optional<zlin::AbelianGroup> k0;  // empty when the Tor term is nonzero
  std::optional<zlin::AbelianGroup> k1;
  zlin::AbelianGroup k0_tor;  // Tor(K0a, K1b) + Tor(K1a, K0b)
  zlin::AbelianGroup k1_tor;  // Tor(K0a, K0b) + Tor(K1a, K1b)
};

KunnethPrediction kunneth_predict(const KTheoryResult& a, const KTheoryResult& b);

// Adds a `kunneth` diagnostic comparing a computed rank-2 result with the
// prediction (n/a when a degree is unresolved).
void attach_kunneth(KTheoryResult& computed, const KunnethPrediction& prediction);

}  // namespace hrck::ktheory
