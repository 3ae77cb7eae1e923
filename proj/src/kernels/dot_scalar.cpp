#include "ltbx/kernels/dot.hpp"

namespace ltbx::kernels::scalar {

// Four independent accumulators, combined pairwise at the end. Same lane
// layout as the AVX2 variant so both round comparably.
ComplexSum weighted_cdot(const double* w, const double* ar, const double* ai, const double* br,
                         const double* bi, std::size_t n) {
  double re[4] = {0, 0, 0, 0};
  double im[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int l = 0; l < 4; ++l) {
      const double wa_r = w[i + l] * ar[i + l];
      const double wa_i = w[i + l] * ai[i + l];
      re[l] += wa_r * br[i + l] + wa_i * bi[i + l];
      im[l] += wa_r * bi[i + l] - wa_i * br[i + l];
    }
  }
  ComplexSum s{(re[0] + re[2]) + (re[1] + re[3]), (im[0] + im[2]) + (im[1] + im[3])};
  for (; i < n; ++i) {
    const double wa_r = w[i] * ar[i];
    const double wa_i = w[i] * ai[i];
    s.re += wa_r * br[i] + wa_i * bi[i];
    s.im += wa_r * bi[i] - wa_i * br[i];
  }
  return s;
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  double acc[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) acc[l] += w[i + l] * a[i + l] * b[i + l];
  double s = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (; i < n; ++i) s += w[i] * a[i] * b[i];
  return s;
}

}  // namespace ltbx::kernels::scalar
