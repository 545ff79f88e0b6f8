#include "khw/f2/rowops.hpp"

namespace khw::f2 {

void xor_rows_scalar(uint64_t *dst, const uint64_t *src, size_t nwords) {
  for (size_t i = 0; i < nwords; ++i) dst[i] ^= src[i];
}

void xor_rows3_scalar(uint64_t *dst, const uint64_t *a, const uint64_t *b, size_t nwords) {
  for (size_t i = 0; i < nwords; ++i) dst[i] = a[i] ^ b[i];
}

}  // namespace khw::f2
