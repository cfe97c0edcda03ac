#include "binary_matrix.hpp"

#include "error.hpp"

#include <algorithm>

namespace hrck {

BinaryMatrix::BinaryMatrix(std::size_t n) : n_(n), cols_(n), rows_(n) {}

BinaryMatrix BinaryMatrix::from_entries(std::size_t n,
                                        std::vector<std::pair<Index, Index>> entries) {
  BinaryMatrix m(n);
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
    return std::pair(x.second, x.first) < std::pair(y.second, y.first);
  });
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  for (auto [r, c] : entries) {
    if (r >= n || c >= n)
      throw DomainError("matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                        ") outside " + std::to_string(n) + "x" + std::to_string(n));
    m.cols_[c].push_back(r);
  }
  // Column-major insertion order keeps every row list sorted by column.
  for (Index c = 0; c < n; ++c)
    for (Index r : m.cols_[c]) m.rows_[r].push_back(c);
  m.nnz_ = entries.size();
  return m;
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
  std::vector<std::pair<Index, Index>> e;
  e.reserve(n);
  for (Index i = 0; i < n; ++i) e.emplace_back(i, i);
  return from_entries(n, std::move(e));
}

BinaryMatrix BinaryMatrix::from_dense(const std::vector<std::vector<int>>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::pair<Index, Index>> e;
  for (Index r = 0; r < n; ++r) {
    if (rows[r].size() != n) throw DomainError("dense matrix is not square");
    for (Index c = 0; c < n; ++c) {
      if (rows[r][c] != 0 && rows[r][c] != 1)
        throw DomainError("dense matrix has an entry outside {0,1}");
      if (rows[r][c] == 1) e.emplace_back(r, c);
    }
  }
  return from_entries(n, std::move(e));
}

bool BinaryMatrix::at(Index row, Index col) const {
  const auto& c = cols_.at(col);
  return std::binary_search(c.begin(), c.end(), row);
}

BinaryMatrix BinaryMatrix::transposed() const {
  BinaryMatrix t(n_);
  t.cols_ = rows_;
  t.rows_ = cols_;
  t.nnz_ = nnz_;
  return t;
}

std::vector<std::vector<int>> BinaryMatrix::to_dense() const {
  std::vector<std::vector<int>> d(n_, std::vector<int>(n_, 0));
  for (Index c = 0; c < n_; ++c)
    for (Index r : cols_[c]) d[r][c] = 1;
  return d;
}

std::vector<CountEntry> multiply(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.size() != b.size()) throw DomainError("matrix product dimension mismatch");
  const std::size_t n = a.size();
  std::vector<CountEntry> out;
  std::vector<std::uint64_t> acc(n, 0);
  std::vector<Index> touched;
  for (Index col = 0; col < n; ++col) {
    for (Index mid : b.column(col))
      for (Index row : a.column(mid)) {
        if (acc[row]++ == 0) touched.push_back(row);
      }
    for (Index row : touched) {
      out.push_back({row, col, acc[row]});
      acc[row] = 0;
    }
    touched.clear();
  }
  std::sort(out.begin(), out.end(), [](const CountEntry& x, const CountEntry& y) {
    return std::pair(x.row, x.col) < std::pair(y.row, y.col);
  });
  return out;
}

BinaryMatrix kronecker(const BinaryMatrix& a, const BinaryMatrix& b) {
  const std::size_t nb = b.size();
  std::vector<std::pair<Index, Index>> e;
  e.reserve(a.nonzeros() * b.nonzeros());
  for (Index ca = 0; ca < a.size(); ++ca)
    for (Index ra : a.column(ca))
      for (Index cb = 0; cb < nb; ++cb)
        for (Index rb : b.column(cb))
          e.emplace_back(static_cast<Index>(ra * nb + rb), static_cast<Index>(ca * nb + cb));
  return BinaryMatrix::from_entries(a.size() * nb, std::move(e));
}

}  // namespace hrck
