#pragma once

#include "binary_matrix.hpp"
#include "presentation.hpp"
#include "text.hpp"
#include "zlin.hpp"

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

namespace test {

inline std::string data_path(const std::string& name) { return std::string(HRCK_DATA_DIR) + "/" + name; }

inline hrck::presentation::TrianglePresentation c1() {
  return hrck::presentation::parse_presentation(hrck::text::read_file(data_path("c1.tri")));
}

// Hand-written no-backtracking matrices, rows and columns in alphabet order.
inline hrck::BinaryMatrix bouquet_matrix() {
  return hrck::BinaryMatrix::from_dense({{1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 0}, {1, 1, 0, 1}});
}

inline hrck::BinaryMatrix three_edge_matrix() {
  return hrck::BinaryMatrix::from_dense({{0, 0, 0, 1, 0, 1},
                                         {0, 0, 1, 0, 1, 0},
                                         {0, 1, 0, 0, 0, 1},
                                         {1, 0, 0, 0, 1, 0},
                                         {0, 1, 0, 1, 0, 0},
                                         {1, 0, 1, 0, 0, 0}});
}

using hrck::zlin::Integer;
using hrck::zlin::IntegerMatrix;
using hrck::zlin::IntegerVector;

// Fraction-free determinant.
inline Integer bareiss_determinant(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t s = k + 1;
      while (s < n && sgn(a[s][k]) == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = t;
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out,
                    std::vector<std::size_t>& cur, std::size_t start = 0) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, out, cur, i + 1);
    cur.pop_back();
  }
}

// gcd of all k x k minors (0 when they all vanish).
inline Integer minor_gcd(const IntegerMatrix& x, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(x.rows(), k, rs, cur);
  subsets(x.cols(), k, cs, cur);
  Integer g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      std::vector<std::vector<Integer>> m(k, std::vector<Integer>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = x(r[i], c[j]);
      const Integer d = bareiss_determinant(std::move(m));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

// Column echelon basis of the lattice spanned by the columns of x, built by
// Euclidean column steps; pivot rows strictly increase.
struct Echelon {
  std::vector<std::size_t> pivot_rows;
  std::vector<IntegerVector> columns;
};

inline Echelon column_echelon(const IntegerMatrix& x) {
  std::vector<IntegerVector> cols(x.cols(), IntegerVector(x.rows()));
  for (std::size_t c = 0; c < x.cols(); ++c)
    for (std::size_t r = 0; r < x.rows(); ++r) cols[c][r] = x(r, c);
  Echelon e;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (;;) {
      std::vector<std::size_t> live;
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (sgn(cols[c][r]) != 0) live.push_back(c);
      if (live.empty()) break;
      std::size_t best = live.front();
      for (std::size_t c : live)
        if (mpz_cmpabs(cols[c][r].get_mpz_t(), cols[best][r].get_mpz_t()) < 0) best = c;
      if (live.size() == 1) {
        e.pivot_rows.push_back(r);
        e.columns.push_back(cols[best]);
        cols.erase(cols.begin() + static_cast<long>(best));
        break;
      }
      for (std::size_t c : live) {
        if (c == best) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), cols[c][r].get_mpz_t(), cols[best][r].get_mpz_t());
        for (std::size_t i = 0; i < x.rows(); ++i) cols[c][i] -= q * cols[best][i];
      }
    }
  }
  return e;
}

inline bool in_lattice(const Echelon& e, IntegerVector w) {
  std::size_t k = 0;
  for (std::size_t r = 0; r < w.size(); ++r) {
    if (k < e.pivot_rows.size() && e.pivot_rows[k] == r) {
      const IntegerVector& col = e.columns[k++];
      if (!mpz_divisible_p(w[r].get_mpz_t(), col[r].get_mpz_t())) return false;
      const Integer q = w[r] / col[r];
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= q * col[i];
    } else if (sgn(w[r]) != 0) {
      return false;
    }
  }
  return true;
}

inline IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntegerMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = d(rng);
  return m;
}

inline bool divisibility_chain(const IntegerVector& d) {
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (!mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t())) return false;
  return true;
}

inline IntegerMatrix diagonal(std::size_t rows, std::size_t cols, const IntegerVector& d) {
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

inline Integer determinant(const IntegerMatrix& m) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c);
  return bareiss_determinant(a);
}

inline hrck::zlin::Order brute_force_order(const IntegerMatrix& x, const IntegerVector& v, int limit) {
  const auto lattice = column_echelon(x);
  for (int k = 1; k <= limit; ++k) {
    IntegerVector w = v;
    for (auto& e : w) e *= k;
    if (in_lattice(lattice, w)) return hrck::zlin::Order::finite(k);
  }
  return hrck::zlin::Order::infinite();
}

}  // namespace test
