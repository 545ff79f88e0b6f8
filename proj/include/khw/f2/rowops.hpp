#pragma once
// Bit-packed F2 row kernels. Scalar reference implementations plus SIMD
// variants selected at runtime (env KHW_F2_KERNEL=scalar|avx2|auto overrides).
// All higher-level F2 linear algebra funnels through these function pointers,
// so the scalar and SIMD paths can be equivalence-tested against each other.

#include <cstddef>
#include <cstdint>

namespace khw::f2 {

using xor_rows_fn = void (*)(uint64_t *dst, const uint64_t *src, size_t nwords);
using xor_rows3_fn = void (*)(uint64_t *dst, const uint64_t *a, const uint64_t *b,
                              size_t nwords);

extern xor_rows_fn xor_rows;    // dst ^= src
extern xor_rows3_fn xor_rows3;  // dst = a ^ b

void xor_rows_scalar(uint64_t *dst, const uint64_t *src, size_t nwords);
void xor_rows3_scalar(uint64_t *dst, const uint64_t *a, const uint64_t *b, size_t nwords);
#if defined(__x86_64__)
void xor_rows_avx2(uint64_t *dst, const uint64_t *src, size_t nwords);
void xor_rows3_avx2(uint64_t *dst, const uint64_t *a, const uint64_t *b, size_t nwords);
#endif

// Name of the kernel currently installed ("scalar" or "avx2").
const char *active_kernel();

// Select a kernel: "scalar", "avx2" or "auto". Returns false if unavailable.
bool select_kernel(const char *name);

}  // namespace khw::f2
