// AVX2 variants of the F2 row kernels. This translation unit is compiled with
// -mavx2; it is only ever called after a runtime cpuid check.
#include "khw/f2/rowops.hpp"

#if defined(__x86_64__)
#include <immintrin.h>

namespace khw::f2 {

void xor_rows_avx2(uint64_t *dst, const uint64_t *src, size_t nwords) {
  size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(dst + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i *>(dst + i), _mm256_xor_si256(d, s));
  }
  for (; i < nwords; ++i) dst[i] ^= src[i];
}

void xor_rows3_avx2(uint64_t *dst, const uint64_t *a, const uint64_t *b, size_t nwords) {
  size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i *>(dst + i), _mm256_xor_si256(x, y));
  }
  for (; i < nwords; ++i) dst[i] = a[i] ^ b[i];
}

}  // namespace khw::f2
#endif
