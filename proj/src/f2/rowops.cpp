#include "khw/f2/rowops.hpp"

#include <cstdlib>
#include <cstring>

namespace khw::f2 {

xor_rows_fn xor_rows = xor_rows_scalar;
xor_rows3_fn xor_rows3 = xor_rows3_scalar;

static const char *g_active = "scalar";

static bool cpu_has_avx2() {
#if defined(__x86_64__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

bool select_kernel(const char *name) {
  if (std::strcmp(name, "scalar") == 0) {
    xor_rows = xor_rows_scalar;
    xor_rows3 = xor_rows3_scalar;
    g_active = "scalar";
    return true;
  }
#if defined(__x86_64__)
  if (std::strcmp(name, "avx2") == 0 && cpu_has_avx2()) {
    xor_rows = xor_rows_avx2;
    xor_rows3 = xor_rows3_avx2;
    g_active = "avx2";
    return true;
  }
#endif
  if (std::strcmp(name, "auto") == 0) {
#if defined(__x86_64__)
    if (cpu_has_avx2()) return select_kernel("avx2");
#endif
    return select_kernel("scalar");
  }
  return false;
}

const char *active_kernel() { return g_active; }

namespace {
struct KernelInit {
  KernelInit() {
    const char *env = std::getenv("KHW_F2_KERNEL");
    if (!env || !select_kernel(env)) select_kernel("auto");
  }
};
KernelInit g_init;
}  // namespace

}  // namespace khw::f2
