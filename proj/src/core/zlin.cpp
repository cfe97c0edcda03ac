#include "zlin.hpp"

#include "error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace hrck::zlin {

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DomainError("ragged integer matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntegerMatrix IntegerMatrix::transposed() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product dimension mismatch");
  IntegerMatrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) p(i, j) += a(i, k) * b(k, j);
    }
  return p;
}

IntegerVector operator*(const IntegerMatrix& a, const IntegerVector& v) {
  if (a.cols() != v.size()) throw DomainError("matrix-vector dimension mismatch");
  IntegerVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

void SparseIntegerMatrix::add(std::size_t r, std::size_t c, const Integer& value) {
  if (r >= rows_ || c >= cols_) throw DomainError("sparse entry out of range");
  auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, std::size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r) {
    it->second += value;
    if (sgn(it->second) == 0) col.erase(it);
  } else if (sgn(value) != 0) {
    col.insert(it, {r, value});
  }
}

std::size_t SparseIntegerMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

IntegerMatrix SparseIntegerMatrix::to_dense() const {
  IntegerMatrix m(rows_, cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& [r, v] : columns_[c]) m(r, c) = v;
  return m;
}

SparseIntegerMatrix SparseIntegerMatrix::from_dense(const IntegerMatrix& m) {
  SparseIntegerMatrix s(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (sgn(m(r, c)) != 0) s.columns_[c].emplace_back(r, m(r, c));
  return s;
}

SparseIntegerMatrix identity_minus_blocks(const std::vector<const BinaryMatrix*>& blocks, bool transpose) {
  if (blocks.empty()) throw DomainError("no blocks");
  const std::size_t n = blocks.front()->size();
  for (const BinaryMatrix* b : blocks)
    if (b->size() != n) throw DomainError("block dimension mismatch");
  SparseIntegerMatrix x(n, n * blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const BinaryMatrix& m = *blocks[k];
    for (Index c = 0; c < n; ++c) {
      x.add(c, k * n + c, 1);
      // Entry (r, c) of M^t is m(c, r), i.e. row r of M read as a column.
      const auto entries = transpose ? m.row(c) : m.column(c);
      for (Index r : entries) x.add(r, k * n + c, -1);
    }
  }
  return x;
}

namespace {

struct Overflow {};

// Checked machine arithmetic; any overflow abandons the int64 attempt.
struct Checked {
  using T = std::int64_t;
  static bool zero(T a) { return a == 0; }
  static std::uint64_t mag(T a) { return a < 0 ? 0 - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a); }
  static bool less_abs(T a, T b) { return mag(a) < mag(b); }
  static T sub_mul(T a, T q, T b) {  // a - q*b
    T p, r;
    if (__builtin_mul_overflow(q, b, &p) || __builtin_sub_overflow(a, p, &r)) throw Overflow{};
    return r;
  }
  static T add(T a, T b) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T neg(T a) {
    if (a == std::numeric_limits<T>::min()) throw Overflow{};
    return -a;
  }
  static T quot(T a, T b) {
    if (a == std::numeric_limits<T>::min() && b == -1) throw Overflow{};
    return a / b;
  }
  static bool divides(T d, T a) { return a % d == 0; }
  static bool negative(T a) { return a < 0; }
  static Integer big(T a) { return Integer(static_cast<long>(a)); }
};

struct Big {
  using T = Integer;
  static bool zero(const T& a) { return sgn(a) == 0; }
  static bool less_abs(const T& a, const T& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
  static T sub_mul(const T& a, const T& q, const T& b) { return a - q * b; }
  static T add(const T& a, const T& b) { return a + b; }
  static T neg(const T& a) { return -a; }
  static T quot(const T& a, const T& b) {
    T q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  static bool divides(const T& d, const T& a) { return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0; }
  static bool negative(const T& a) { return sgn(a) < 0; }
  static Integer big(const T& a) { return a; }
};

enum class Track { None, Left, Both };

template <class A>
struct Dense {
  using T = typename A::T;
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;
  T& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
};

// Below this many remaining entries the per-step thread start-up costs more
// than the sweep itself.
constexpr std::size_t kParallelWork = 1 << 14;

template <class A>
class Eliminator {
public:
  using T = typename A::T;

  Eliminator(const IntegerMatrix& x, Track track, unsigned threads) : track_(track), threads_(threads) {
    x_.rows = x.rows();
    x_.cols = x.cols();
    x_.a.resize(x_.rows * x_.cols);
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t c = 0; c < x.cols(); ++c) x_.at(r, c) = convert(x(r, c));
    if (track_ != Track::None) init_identity(u_, x_.rows);
    if (track_ == Track::Both) init_identity(v_, x_.cols);
  }

  void run() {
    const std::size_t limit = std::min(x_.rows, x_.cols);
    for (t_ = 0; t_ < limit; ++t_) {
      if (!select_global_pivot()) break;
      reduce_pivot();
      if (A::negative(x_.at(t_, t_))) negate_row(t_);
      factors_.push_back(A::big(x_.at(t_, t_)));
    }
  }

  IntegerVector factors() const { return factors_; }
  IntegerMatrix left() const { return export_matrix(u_); }
  IntegerMatrix right() const { return export_matrix(v_); }

private:
  static T convert(const Integer& v) {
    if constexpr (std::is_same_v<T, Integer>) {
      return v;
    } else {
      if (!v.fits_slong_p()) throw Overflow{};
      return static_cast<T>(v.get_si());
    }
  }

  static void init_identity(Dense<A>& m, std::size_t n) {
    m.rows = m.cols = n;
    m.a.assign(n * n, T(0));
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = T(1);
  }

  static IntegerMatrix export_matrix(const Dense<A>& m) {
    IntegerMatrix out(m.rows, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r)
      for (std::size_t c = 0; c < m.cols; ++c) out(r, c) = A::big(m.a[r * m.cols + c]);
    return out;
  }

  unsigned workers(std::size_t work) const { return work >= kParallelWork ? threads_ : 1; }

  // Smallest nonzero |entry| in the trailing block; ties go to the smallest
  // row, then column.
  bool select_global_pivot() {
    std::size_t pr = 0, pc = 0;
    bool found = false;
    for (std::size_t r = t_; r < x_.rows; ++r)
      for (std::size_t c = t_; c < x_.cols; ++c) {
        const T& e = x_.at(r, c);
        if (A::zero(e)) continue;
        if (!found || A::less_abs(e, x_.at(pr, pc))) {
          pr = r;
          pc = c;
          found = true;
        }
      }
    if (!found) return false;
    swap_rows(t_, pr);
    swap_cols(t_, pc);
    return true;
  }

  void reduce_pivot() {
    for (;;) {
      clear_column();
      clear_row();
      if (select_local_pivot()) continue;
      // The pivot must divide the whole trailing block; fold an offending
      // row into the pivot row and go round again.
      const T& d = x_.at(t_, t_);
      bool repaired = false;
      for (std::size_t r = t_ + 1; r < x_.rows && !repaired; ++r)
        for (std::size_t c = t_ + 1; c < x_.cols; ++c)
          if (!A::divides(d, x_.at(r, c))) {
            add_row(t_, r);
            repaired = true;
            break;
          }
      if (!repaired) return;
    }
  }

  void clear_column() {
    const T pivot = x_.at(t_, t_);
    const std::size_t width = x_.cols - t_;
    parallel_for(t_ + 1, x_.rows, workers((x_.rows - t_) * width), [&](std::size_t r) {
      if (A::zero(x_.at(r, t_))) return;
      const T q = A::quot(x_.at(r, t_), pivot);
      if (A::zero(q)) return;
      for (std::size_t c = t_; c < x_.cols; ++c) x_.at(r, c) = A::sub_mul(x_.at(r, c), q, x_.at(t_, c));
      if (track_ != Track::None)
        for (std::size_t c = 0; c < u_.cols; ++c) u_.at(r, c) = A::sub_mul(u_.at(r, c), q, u_.at(t_, c));
    });
  }

  void clear_row() {
    const T pivot = x_.at(t_, t_);
    const std::size_t height = x_.rows - t_;
    parallel_for(t_ + 1, x_.cols, workers((x_.cols - t_) * height), [&](std::size_t c) {
      if (A::zero(x_.at(t_, c))) return;
      const T q = A::quot(x_.at(t_, c), pivot);
      if (A::zero(q)) return;
      for (std::size_t r = t_; r < x_.rows; ++r) x_.at(r, c) = A::sub_mul(x_.at(r, c), q, x_.at(r, t_));
      if (track_ == Track::Both)
        for (std::size_t r = 0; r < v_.rows; ++r) v_.at(r, c) = A::sub_mul(v_.at(r, c), q, v_.at(r, t_));
    });
  }

  // After a sweep, leftover remainders in the pivot row/column are smaller
  // than the pivot; the smallest becomes the new pivot.
  bool select_local_pivot() {
    std::size_t best_r = t_, best_c = t_;
    for (std::size_t r = t_ + 1; r < x_.rows; ++r)
      if (!A::zero(x_.at(r, t_)) && A::less_abs(x_.at(r, t_), x_.at(best_r, best_c))) {
        best_r = r;
        best_c = t_;
      }
    for (std::size_t c = t_ + 1; c < x_.cols; ++c)
      if (!A::zero(x_.at(t_, c)) && A::less_abs(x_.at(t_, c), x_.at(best_r, best_c))) {
        best_r = t_;
        best_c = c;
      }
    if (best_r == t_ && best_c == t_) {
      for (std::size_t r = t_ + 1; r < x_.rows; ++r)
        if (!A::zero(x_.at(r, t_))) return true;  // cannot happen after a full sweep
      for (std::size_t c = t_ + 1; c < x_.cols; ++c)
        if (!A::zero(x_.at(t_, c))) return true;
      return false;
    }
    swap_rows(t_, best_r);
    swap_cols(t_, best_c);
    return true;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < x_.cols; ++c) std::swap(x_.at(i, c), x_.at(j, c));
    if (track_ != Track::None)
      for (std::size_t c = 0; c < u_.cols; ++c) std::swap(u_.at(i, c), u_.at(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < x_.rows; ++r) std::swap(x_.at(r, i), x_.at(r, j));
    if (track_ == Track::Both)
      for (std::size_t r = 0; r < v_.rows; ++r) std::swap(v_.at(r, i), v_.at(r, j));
  }

  void add_row(std::size_t target, std::size_t source) {
    for (std::size_t c = t_; c < x_.cols; ++c) x_.at(target, c) = A::add(x_.at(target, c), x_.at(source, c));
    if (track_ != Track::None)
      for (std::size_t c = 0; c < u_.cols; ++c) u_.at(target, c) = A::add(u_.at(target, c), u_.at(source, c));
  }

  void negate_row(std::size_t r) {
    for (std::size_t c = t_; c < x_.cols; ++c) x_.at(r, c) = A::neg(x_.at(r, c));
    if (track_ != Track::None)
      for (std::size_t c = 0; c < u_.cols; ++c) u_.at(r, c) = A::neg(u_.at(r, c));
  }

  Track track_;
  unsigned threads_;
  std::size_t t_ = 0;
  Dense<A> x_, u_, v_;
  IntegerVector factors_;
};

struct DenseResult {
  IntegerVector factors;
  std::optional<IntegerMatrix> u, v;
  bool used_bignum = false;
};

template <class A>
DenseResult eliminate(const IntegerMatrix& x, Track track, unsigned threads) {
  Eliminator<A> e(x, track, threads);
  e.run();
  DenseResult out;
  out.factors = e.factors();
  if (track != Track::None) out.u = e.left();
  if (track == Track::Both) out.v = e.right();
  out.used_bignum = std::is_same_v<A, Big>;
  return out;
}

DenseResult dense_smith(const IntegerMatrix& x, Track track, unsigned threads) {
  try {
    return eliminate<Checked>(x, track, threads);
  } catch (const Overflow&) {
    return eliminate<Big>(x, track, threads);
  }
}

Order order_from(const IntegerVector& factors, const IntegerMatrix& u, const IntegerVector& v) {
  const IntegerVector w = u * v;
  Integer order = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i >= factors.size()) {
      if (sgn(w[i]) != 0) return Order::infinite();
      continue;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), factors[i].get_mpz_t(), w[i].get_mpz_t());
    const Integer k = factors[i] / g;
    mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), k.get_mpz_t());
  }
  return Order::finite(order);
}

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& x, bool with_transforms, const Options& options) {
  DenseResult r = dense_smith(x, with_transforms ? Track::Both : Track::None, std::max(1u, options.threads));
  SmithDecomposition out;
  out.invariant_factors = std::move(r.factors);
  out.rank = out.invariant_factors.size();
  out.u = std::move(r.u);
  out.v = std::move(r.v);
  out.used_bignum = r.used_bignum;
  return out;
}

std::string Order::to_string() const {
  switch (kind_) {
    case Kind::Finite: return value_.get_str();
    case Kind::Infinite: return "infinite";
    case Kind::NotComputed: break;
  }
  return "not-computed";
}

AbelianGroup::AbelianGroup(std::size_t free_rank, const IntegerVector& cyclic_orders) : free_rank_(free_rank) {
  IntegerVector orders;
  for (const Integer& m : cyclic_orders) {
    const Integer a = abs(m);
    if (sgn(a) == 0)
      ++free_rank_;
    else if (a != 1)
      orders.push_back(a);
  }
  std::sort(orders.begin(), orders.end());
  // Z/a + Z/b = Z/gcd + Z/lcm; sweeping every pair leaves a divisibility chain.
  for (std::size_t i = 0; i < orders.size(); ++i)
    for (std::size_t j = i + 1; j < orders.size(); ++j) {
      Integer g, l;
      mpz_gcd(g.get_mpz_t(), orders[i].get_mpz_t(), orders[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), orders[i].get_mpz_t(), orders[j].get_mpz_t());
      orders[i] = g;
      orders[j] = l;
    }
  for (Integer& m : orders)
    if (m != 1) torsion_.push_back(std::move(m));
}

Integer AbelianGroup::torsion_order() const {
  Integer n = 1;
  for (const Integer& d : torsion_) n *= d;
  return n;
}

std::vector<Integer> AbelianGroup::elementary_divisors() const {
  constexpr unsigned long kTrialBound = 1'000'000;
  std::vector<std::pair<Integer, Integer>> parts;  // (prime or cofactor, power)
  for (Integer n : torsion_) {
    for (unsigned long p = 2; p <= kTrialBound && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
      if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
      Integer power = 1;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        n /= p;
        power *= p;
      }
      parts.emplace_back(Integer(p), power);
    }
    if (n != 1) parts.emplace_back(n, n);
  }
  std::sort(parts.begin(), parts.end());
  std::vector<Integer> out;
  for (auto& [base, power] : parts) out.push_back(std::move(power));
  return out;
}

std::string AbelianGroup::render() const {
  std::vector<std::string> terms;
  if (free_rank_ == 1)
    terms.push_back("Z");
  else if (free_rank_ > 1)
    terms.push_back("Z^" + std::to_string(free_rank_));
  const auto divisors = elementary_divisors();
  for (std::size_t i = 0; i < divisors.size();) {
    std::size_t j = i;
    while (j < divisors.size() && divisors[j] == divisors[i]) ++j;
    const std::string cyclic = "Z/" + divisors[i].get_str();
    terms.push_back(j - i == 1 ? cyclic : "(" + cyclic + ")^" + std::to_string(j - i));
    i = j;
  }
  if (terms.empty()) return "0";
  std::string out = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) out += " (+) " + terms[i];
  return out;
}

std::string AbelianGroup::render_invariant_factors() const {
  if (torsion_.empty()) return "-";
  std::string out;
  for (const Integer& d : torsion_) out += (out.empty() ? "" : ",") + d.get_str();
  return out;
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  IntegerVector t = a.torsion();
  t.insert(t.end(), b.torsion().begin(), b.torsion().end());
  return AbelianGroup(a.free_rank() + b.free_rank(), t);
}

namespace {

IntegerVector pairwise_gcds(const AbelianGroup& a, const AbelianGroup& b) {
  IntegerVector out;
  for (const Integer& g : a.torsion())
    for (const Integer& h : b.torsion()) {
      Integer d;
      mpz_gcd(d.get_mpz_t(), g.get_mpz_t(), h.get_mpz_t());
      out.push_back(d);
    }
  return out;
}

}  // namespace

AbelianGroup tensor(const AbelianGroup& a, const AbelianGroup& b) {
  IntegerVector t = pairwise_gcds(a, b);
  for (std::size_t i = 0; i < b.free_rank(); ++i) t.insert(t.end(), a.torsion().begin(), a.torsion().end());
  for (std::size_t i = 0; i < a.free_rank(); ++i) t.insert(t.end(), b.torsion().begin(), b.torsion().end());
  return AbelianGroup(a.free_rank() * b.free_rank(), t);
}

AbelianGroup tor_product(const AbelianGroup& a, const AbelianGroup& b) {
  return AbelianGroup(0, pairwise_gcds(a, b));
}

namespace {

using SparseRow = std::vector<std::pair<Index, Integer>>;  // sorted by column

// Unit-pivot elimination on the presentation matrix. Pivoting on a +-1 entry
// (i, j) drops generator i and relation j without changing the quotient;
// the tracked element is rewritten along with the rows.
class UnitPivotReducer {
public:
  UnitPivotReducer(const SparseIntegerMatrix& x, IntegerVector* element, double threshold)
      : rows_(x.rows()), row_alive_(x.rows(), true), col_rows_(x.cols()), element_(element),
        threshold_(threshold) {
    for (std::size_t c = 0; c < x.cols(); ++c)
      for (const auto& [r, v] : x.column(c)) {
        rows_[r].emplace_back(static_cast<Index>(c), v);
        col_rows_[c].insert(static_cast<Index>(r));
        ++nnz_;
      }
    live_rows_ = x.rows();
  }

  void run() {
    while (live_rows_ > 0 && !too_dense()) {
      const auto pivot = choose();
      if (!pivot) break;
      eliminate(pivot->first, pivot->second);
      ++pivots_;
    }
  }

  std::size_t pivots() const { return pivots_; }

  // Remaining block as a dense matrix over live rows and nonempty columns.
  IntegerMatrix remainder(IntegerVector* element_out) const {
    std::vector<Index> live;
    for (Index r = 0; r < rows_.size(); ++r)
      if (row_alive_[r]) live.push_back(r);
    std::vector<std::size_t> col_pos(col_rows_.size(), SIZE_MAX);
    std::size_t width = 0;
    for (std::size_t c = 0; c < col_rows_.size(); ++c)
      if (!col_rows_[c].empty()) col_pos[c] = width++;
    IntegerMatrix m(live.size(), width);
    for (std::size_t i = 0; i < live.size(); ++i)
      for (const auto& [c, v] : rows_[live[i]]) m(i, col_pos[c]) = v;
    if (element_out) {
      element_out->clear();
      for (Index r : live) element_out->push_back((*element_)[r]);
    }
    return m;
  }

private:
  std::size_t nonempty_columns() const {
    std::size_t n = 0;
    for (const auto& c : col_rows_) n += !c.empty();
    return n;
  }

  bool too_dense() const {
    const double area = static_cast<double>(live_rows_) * static_cast<double>(std::max<std::size_t>(1, nonempty_columns()));
    return static_cast<double>(nnz_) > threshold_ * area;
  }

  // Markowitz cost (row length - 1)(column length - 1); ties resolve to the
  // smallest (row, column).
  std::optional<std::pair<Index, Index>> choose() const {
    std::optional<std::pair<Index, Index>> best;
    std::size_t best_cost = SIZE_MAX;
    for (Index r = 0; r < rows_.size(); ++r) {
      if (!row_alive_[r]) continue;
      const std::size_t row_len = rows_[r].size();
      for (const auto& [c, v] : rows_[r]) {
        if (mpz_cmpabs_ui(v.get_mpz_t(), 1) != 0) continue;
        const std::size_t cost = (row_len - 1) * (col_rows_[c].size() - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best = std::pair(r, c);
          if (cost == 0) return best;
        }
      }
    }
    return best;
  }

  static const Integer* find(const SparseRow& row, Index c) {
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, Index col) { return e.first < col; });
    return it != row.end() && it->first == c ? &it->second : nullptr;
  }

  void eliminate(Index i, Index j) {
    const Integer p = *find(rows_[i], j);  // +-1, its own inverse
    const SparseRow pivot_row = rows_[i];
    const std::vector<Index> targets(col_rows_[j].begin(), col_rows_[j].end());
    for (Index k : targets) {
      if (k == i) continue;
      const Integer f = *find(rows_[k], j) * p;
      SparseRow merged;
      merged.reserve(rows_[k].size() + pivot_row.size());
      auto a = rows_[k].begin();
      auto b = pivot_row.begin();
      while (a != rows_[k].end() || b != pivot_row.end()) {
        if (b == pivot_row.end() || (a != rows_[k].end() && a->first < b->first)) {
          merged.push_back(std::move(*a++));
        } else if (a == rows_[k].end() || b->first < a->first) {
          merged.emplace_back(b->first, -f * b->second);
          col_rows_[b->first].insert(k);
          ++nnz_;
          ++b;
        } else {
          Integer v = a->second - f * b->second;
          if (sgn(v) != 0) {
            merged.emplace_back(a->first, std::move(v));
          } else {
            col_rows_[a->first].erase(k);
            --nnz_;
          }
          ++a;
          ++b;
        }
      }
      rows_[k] = std::move(merged);
      if (element_) (*element_)[k] -= f * (*element_)[i];
    }
    for (const auto& [c, v] : rows_[i]) col_rows_[c].erase(i);
    nnz_ -= rows_[i].size();
    rows_[i].clear();
    row_alive_[i] = false;
    --live_rows_;
  }

  std::vector<SparseRow> rows_;
  std::vector<bool> row_alive_;
  std::vector<std::set<Index>> col_rows_;
  IntegerVector* element_;
  double threshold_;
  std::size_t nnz_ = 0;
  std::size_t live_rows_ = 0;
  std::size_t pivots_ = 0;
};

// Only attempted when the dense residue table stays modest.
constexpr std::size_t kModularRankCells = std::size_t(1) << 24;

}  // namespace

Cokernel cokernel(const SparseIntegerMatrix& x, const std::optional<IntegerVector>& element,
                  const Options& options) {
  if (element && element->size() != x.rows()) throw DomainError("element length does not match matrix rows");
  IntegerVector v = element.value_or(IntegerVector(x.rows()));
  UnitPivotReducer reducer(x, &v, options.sparse_phase ? options.dense_threshold : -1.0);
  reducer.run();
  IntegerVector w;
  const IntegerMatrix rest = reducer.remainder(&w);
  const DenseResult d = dense_smith(rest, element ? Track::Left : Track::None, std::max(1u, options.threads));

  Cokernel out;
  out.sparse_pivots = reducer.pivots();
  out.rank = reducer.pivots() + d.factors.size();
  out.group = AbelianGroup(rest.rows() - d.factors.size(), d.factors);
  if (element) out.order = order_from(d.factors, *d.u, w);

  if (x.rows() * x.cols() <= kModularRankCells && modular_rank(x) > out.rank)
    throw ConsistencyError("modular rank exceeds exact rank");
  return out;
}

AbelianGroup cokernel(const IntegerMatrix& x, const Options& options) {
  const auto r = smith_normal_form(x, false, options);
  return AbelianGroup(x.rows() - r.rank, r.invariant_factors);
}

Order element_order_in_cokernel(const IntegerMatrix& x, const IntegerVector& v, const Options& options) {
  if (v.size() != x.rows()) throw DomainError("element length does not match matrix rows");
  const DenseResult d = dense_smith(x, Track::Left, std::max(1u, options.threads));
  return order_from(d.factors, *d.u, v);
}

std::size_t modular_rank(const SparseIntegerMatrix& x, std::uint32_t p) {
  const std::size_t rows = x.rows(), cols = x.cols();
  std::vector<std::uint64_t> a(rows * cols, 0);
  for (std::size_t c = 0; c < cols; ++c)
    for (const auto& [r, v] : x.column(c)) a[r * cols + c] = mpz_fdiv_ui(v.get_mpz_t(), p);
  auto inverse = [p](std::uint64_t b) {
    std::uint64_t result = 1, e = p - 2;
    while (e) {
      if (e & 1) result = result * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return result;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pr = rank;
    while (pr < rows && a[pr * cols + c] == 0) ++pr;
    if (pr == rows) continue;
    if (pr != rank)
      for (std::size_t k = 0; k < cols; ++k) std::swap(a[pr * cols + k], a[rank * cols + k]);
    const std::uint64_t inv = inverse(a[rank * cols + c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint64_t f = a[r * cols + c] * inv % p;
      if (f == 0) continue;
      for (std::size_t k = c; k < cols; ++k)
        a[r * cols + k] = (a[r * cols + k] + (p - f) * a[rank * cols + k]) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace hrck::zlin
