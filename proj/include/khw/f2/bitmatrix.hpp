#pragma once
// Dense bit-packed matrices over F2, built on the rowops kernels.

#include <cstdint>
#include <optional>
#include <vector>

#include "khw/f2/rowops.hpp"

namespace khw::f2 {

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  bool get(size_t r, size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(size_t r, size_t c, bool v) {
    uint64_t &w = bits_[r * words_ + c / 64];
    uint64_t m = uint64_t(1) << (c % 64);
    if (v) w |= m; else w &= ~m;
  }
  void flip(size_t r, size_t c) { bits_[r * words_ + c / 64] ^= uint64_t(1) << (c % 64); }

  uint64_t *row(size_t r) { return bits_.data() + r * words_; }
  const uint64_t *row(size_t r) const { return bits_.data() + r * words_; }
  size_t words() const { return words_; }

  void xor_row(size_t dst, size_t src) { xor_rows(row(dst), row(src), words_); }
  bool row_zero(size_t r) const;

  // Rank by in-place Gaussian elimination on a copy.
  size_t rank() const;

  // Any solution x of A x = b (column vector semantics), or nullopt.
  std::optional<std::vector<uint8_t>> solve(const std::vector<uint8_t> &b) const;

 private:
  size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<uint64_t> bits_;
};

}  // namespace khw::f2
