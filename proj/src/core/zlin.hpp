#pragma once

#include "binary_matrix.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hrck::zlin {

using Integer = mpz_class;
using IntegerVector = std::vector<Integer>;

class IntegerMatrix {
public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntegerMatrix transposed() const;
  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend IntegerVector operator*(const IntegerMatrix& a, const IntegerVector& v);
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Column-compressed integer matrix used to assemble large sparse inputs.
class SparseIntegerMatrix {
public:
  SparseIntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  // Adds `value` to entry (r, c); zero results are dropped.
  void add(std::size_t r, std::size_t c, const Integer& value);
  const std::vector<std::pair<std::size_t, Integer>>& column(std::size_t c) const { return columns_[c]; }
  std::size_t nonzeros() const;

  IntegerMatrix to_dense() const;
  static SparseIntegerMatrix from_dense(const IntegerMatrix& m);

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<std::pair<std::size_t, Integer>>> columns_;  // sorted by row
};

// [I - A_1 | I - A_2 | ...], each block n x n.
SparseIntegerMatrix identity_minus_blocks(const std::vector<const BinaryMatrix*>& blocks,
                                          bool transpose);

struct Options {
  unsigned threads = 1;
  double dense_threshold = 0.25;  // switch to dense elimination above this fill
  bool sparse_phase = true;
};

struct SmithDecomposition {
  IntegerVector invariant_factors;  // d_1 | d_2 | ... | d_r, all >= 1
  std::size_t rank = 0;
  std::optional<IntegerMatrix> u;   // rows x rows
  std::optional<IntegerMatrix> v;   // cols x cols
  bool used_bignum = false;         // int64 elimination overflowed and was redone
};

SmithDecomposition smith_normal_form(const IntegerMatrix& x, bool with_transforms,
                                     const Options& options = {});

class Order {
public:
  enum class Kind { Finite, Infinite, NotComputed };

  static Order finite(Integer value) { return Order(Kind::Finite, std::move(value)); }
  static Order infinite() { return Order(Kind::Infinite, 0); }
  static Order not_computed() { return Order(Kind::NotComputed, 0); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  const Integer& value() const noexcept { return value_; }
  std::string to_string() const;

  friend bool operator==(const Order&, const Order&) = default;

private:
  Order(Kind k, Integer v) : kind_(k), value_(std::move(v)) {}
  Kind kind_;
  Integer value_;
};

class AbelianGroup {
public:
  AbelianGroup() = default;
  // Accepts any list of cyclic orders: 0 means a copy of Z, 1 is dropped.
  AbelianGroup(std::size_t free_rank, const IntegerVector& cyclic_orders);

  static AbelianGroup free(std::size_t rank) { return AbelianGroup(rank, {}); }

  std::size_t free_rank() const noexcept { return free_rank_; }
  const IntegerVector& torsion() const noexcept { return torsion_; }  // invariant factors >= 2
  bool trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
  AbelianGroup torsion_part() const { return AbelianGroup(0, torsion_); }
  Integer torsion_order() const;

  // Prime powers of the torsion part in increasing (prime, exponent) order.
  // Factors beyond the trial-division bound are left as one composite entry.
  std::vector<Integer> elementary_divisors() const;

  // "Z^2 (+) (Z/2)^4 (+) Z/3"; "0" for the trivial group.
  std::string render() const;
  std::string render_invariant_factors() const;  // "2,2,2,6" or "-"

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

private:
  std::size_t free_rank_ = 0;
  IntegerVector torsion_;
};

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);
AbelianGroup tensor(const AbelianGroup& a, const AbelianGroup& b);
AbelianGroup tor_product(const AbelianGroup& a, const AbelianGroup& b);

struct Cokernel {
  AbelianGroup group;
  std::size_t rank = 0;           // rank of the presenting matrix
  Order order = Order::not_computed();
  std::size_t sparse_pivots = 0;  // unit pivots removed before dense elimination
};

// Z^rows / column span. When `element` is given its order in the quotient
// is computed as well.
Cokernel cokernel(const SparseIntegerMatrix& x, const std::optional<IntegerVector>& element = std::nullopt,
                  const Options& options = {});
AbelianGroup cokernel(const IntegerMatrix& x, const Options& options = {});

Order element_order_in_cokernel(const IntegerMatrix& x, const IntegerVector& v, const Options& options = {});

// Rank over Z/p; never exceeds the rank over Q.
std::size_t modular_rank(const SparseIntegerMatrix& x, std::uint32_t p = 2147483647u);

}  // namespace hrck::zlin
