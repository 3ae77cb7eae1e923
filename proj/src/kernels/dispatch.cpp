#include <atomic>
#include <cstdlib>

#include "ltbx/kernels/dot.hpp"

namespace ltbx::kernels {

namespace {
// -1: not decided yet
std::atomic<int> g_forced{-1};

Isa detect() {
  const char* env = std::getenv("LTBX_FORCE_SCALAR");
  if (env && *env && *env != '0') return Isa::Scalar;
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}
}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() {
  int f = g_forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Isa>(f);
  static const Isa detected = detect();
  return detected;
}

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) isa = Isa::Scalar;
  g_forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() { g_forced.store(-1, std::memory_order_relaxed); }

ComplexSum weighted_cdot(const double* w, const double* ar, const double* ai, const double* br,
                         const double* bi, std::size_t n) {
  if (active_isa() == Isa::Avx2) return avx2::weighted_cdot(w, ar, ai, br, bi, n);
  return scalar::weighted_cdot(w, ar, ai, br, bi, n);
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  if (active_isa() == Isa::Avx2) return avx2::weighted_dot(w, a, b, n);
  return scalar::weighted_dot(w, a, b, n);
}

}  // namespace ltbx::kernels
