#include "khw/f2/bitmatrix.hpp"

namespace khw::f2 {

bool BitMatrix::row_zero(size_t r) const {
  const uint64_t *p = row(r);
  for (size_t i = 0; i < words_; ++i)
    if (p[i]) return false;
  return true;
}

size_t BitMatrix::rank() const {
  BitMatrix m(*this);
  size_t rk = 0;
  for (size_t c = 0; c < m.cols_ && rk < m.rows_; ++c) {
    size_t piv = rk;
    while (piv < m.rows_ && !m.get(piv, c)) ++piv;
    if (piv == m.rows_) continue;
    if (piv != rk) {
      for (size_t w = 0; w < m.words_; ++w) std::swap(m.row(piv)[w], m.row(rk)[w]);
    }
    for (size_t r = 0; r < m.rows_; ++r)
      if (r != rk && m.get(r, c)) m.xor_row(r, rk);
    ++rk;
  }
  return rk;
}

std::optional<std::vector<uint8_t>> BitMatrix::solve(const std::vector<uint8_t> &b) const {
  // Eliminate on [A | b]; read a particular solution off the pivots.
  BitMatrix m(rows_, cols_ + 1);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t w = 0; w < words_; ++w) m.row(r)[w] = row(r)[w];
    // cols_ may straddle the last word; clear any stray bits then set b.
    if (cols_ % 64) {
      uint64_t mask = (uint64_t(1) << (cols_ % 64)) - 1;
      m.row(r)[words_ - 1] &= mask;
    }
    if (b[r]) m.set(r, cols_, true);
  }
  std::vector<int> pivot_of_row;
  size_t rk = 0;
  for (size_t c = 0; c < cols_ && rk < rows_; ++c) {
    size_t piv = rk;
    while (piv < rows_ && !m.get(piv, c)) ++piv;
    if (piv == rows_) continue;
    if (piv != rk)
      for (size_t w = 0; w < m.words(); ++w) std::swap(m.row(piv)[w], m.row(rk)[w]);
    for (size_t r = 0; r < rows_; ++r)
      if (r != rk && m.get(r, c)) m.xor_row(r, rk);
    pivot_of_row.push_back((int)c);
    ++rk;
  }
  for (size_t r = rk; r < rows_; ++r)
    if (m.get(r, cols_)) return std::nullopt;  // inconsistent
  std::vector<uint8_t> x(cols_, 0);
  for (size_t r = 0; r < rk; ++r) x[pivot_of_row[r]] = m.get(r, cols_) ? 1 : 0;
  return x;
}

}  // namespace khw::f2
