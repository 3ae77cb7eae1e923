#pragma once

#include <cstddef>
#include <string_view>

// Weighted inner-product kernels for quadrature sums. Inputs are split into
// real and imaginary planes (structure of arrays). Two implementations exist:
// a portable scalar reference and an AVX2+FMA variant chosen at runtime.
namespace ltbx::kernels {

struct ComplexSum {
  double re = 0;
  double im = 0;
};

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// Instruction set used by the dispatching entry points. AVX2 is picked when
/// the CPU reports avx2 and fma, unless LTBX_FORCE_SCALAR is set in the
/// environment or force_isa() was called.
Isa active_isa();
bool avx2_available();
/// Pin the dispatch target (tests, benchmarks). Requesting Avx2 on a machine
/// without it falls back to Scalar.
void force_isa(Isa isa);
void reset_isa();

/// sum_i w[i] * conj(a[i]) * b[i]
ComplexSum weighted_cdot(const double* w, const double* ar, const double* ai, const double* br,
                         const double* bi, std::size_t n);
/// sum_i w[i] * a[i] * b[i]
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);

namespace scalar {
ComplexSum weighted_cdot(const double* w, const double* ar, const double* ai, const double* br,
                         const double* bi, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
ComplexSum weighted_cdot(const double* w, const double* ar, const double* ai, const double* br,
                         const double* bi, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);
}  // namespace avx2

}  // namespace ltbx::kernels
