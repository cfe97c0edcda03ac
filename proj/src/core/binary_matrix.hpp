#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hrck {

using Index = std::uint32_t;

// Square {0,1}-matrix stored sparsely by both columns and rows. Entry (r, c)
// follows the M(b, a) convention: row r is the successor letter b, column c
// the predecessor letter a.
class BinaryMatrix {
public:
  BinaryMatrix() = default;
  explicit BinaryMatrix(std::size_t n);

  // Duplicate coordinates collapse to a single 1.
  static BinaryMatrix from_entries(std::size_t n, std::vector<std::pair<Index, Index>> entries);
  static BinaryMatrix identity(std::size_t n);
  static BinaryMatrix from_dense(const std::vector<std::vector<int>>& rows);

  std::size_t size() const noexcept { return n_; }
  std::size_t nonzeros() const noexcept { return nnz_; }
  bool at(Index row, Index col) const;

  std::span<const Index> column(Index col) const { return cols_[col]; }
  std::span<const Index> row(Index r) const { return rows_[r]; }
  std::size_t row_sum(Index r) const { return rows_[r].size(); }
  std::size_t column_sum(Index c) const { return cols_[c].size(); }

  BinaryMatrix transposed() const;
  std::vector<std::vector<int>> to_dense() const;

  friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) {
    return a.n_ == b.n_ && a.cols_ == b.cols_;
  }

private:
  std::size_t n_ = 0;
  std::size_t nnz_ = 0;
  std::vector<std::vector<Index>> cols_;
  std::vector<std::vector<Index>> rows_;
};

struct CountEntry {
  Index row;
  Index col;
  std::uint64_t count;

  friend bool operator==(const CountEntry&, const CountEntry&) = default;
};

// Nonzero entries of the integer product a * b, ordered by (row, col).
std::vector<CountEntry> multiply(const BinaryMatrix& a, const BinaryMatrix& b);

// Kronecker product with row-major pair indexing (i, j) -> i * b.size() + j.
BinaryMatrix kronecker(const BinaryMatrix& a, const BinaryMatrix& b);

}  // namespace hrck
