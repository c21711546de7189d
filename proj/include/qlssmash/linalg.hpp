#pragma once

#include <vector>

#include "qlssmash/cyclotomic.hpp"

namespace qls {

/// Dense matrix over a cyclotomic field, row-major. Used for exact ranks and
/// null spaces; sizes are small (at most a few thousand columns).
class CycMatrix {
 public:
  CycMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  CycNumber& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycNumber& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rank() const;

  /// Basis of {v : M v = 0}, one vector of length cols() per basis element,
  /// in reduced form (each has a 1 at its free column, 0 at other free columns).
  std::vector<std::vector<CycNumber>> nullspace() const;

 private:
  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref();

  std::size_t rows_;
  std::size_t cols_;
  std::vector<CycNumber> data_;
};

}  // namespace qls
