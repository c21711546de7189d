#include "qlssmash/linalg.hpp"

namespace qls {

std::vector<std::size_t> CycMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
    std::size_t p = row;
    while (p < rows_ && at(p, c).is_zero()) ++p;
    if (p == rows_) continue;
    if (p != row) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(row, j));
    }
    const CycNumber inv = at(row, c).inverse();
    for (std::size_t j = c; j < cols_; ++j) {
      if (!at(row, j).is_zero()) at(row, j) *= inv;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || at(r, c).is_zero()) continue;
      const CycNumber f = at(r, c);
      for (std::size_t j = c; j < cols_; ++j) {
        if (!at(row, j).is_zero()) at(r, j) -= f * at(row, j);
      }
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t CycMatrix::rank() const {
  CycMatrix copy = *this;
  return copy.rref().size();
}

std::vector<std::vector<CycNumber>> CycMatrix::nullspace() const {
  CycMatrix m = *this;
  const auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<std::vector<CycNumber>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<CycNumber> v(cols_);
    v[free] = CycNumber(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qls
