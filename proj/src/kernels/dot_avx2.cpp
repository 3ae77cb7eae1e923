// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.
#include <immintrin.h>

#include "ltbx/kernels/dot.hpp"

namespace ltbx::kernels::avx2 {

namespace {
inline double hsum(__m256d v) {
  // lanes (0+2) + (1+3), matching the scalar combine order
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}
}  // namespace

ComplexSum weighted_cdot(const double* w, const double* ar, const double* ai, const double* br,
                         const double* bi, std::size_t n) {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vw = _mm256_loadu_pd(w + i);
    const __m256d war = _mm256_mul_pd(vw, _mm256_loadu_pd(ar + i));
    const __m256d wai = _mm256_mul_pd(vw, _mm256_loadu_pd(ai + i));
    const __m256d vbr = _mm256_loadu_pd(br + i);
    const __m256d vbi = _mm256_loadu_pd(bi + i);
    re = _mm256_fmadd_pd(war, vbr, re);
    re = _mm256_fmadd_pd(wai, vbi, re);
    im = _mm256_fmadd_pd(war, vbi, im);
    im = _mm256_fnmadd_pd(wai, vbr, im);
  }
  ComplexSum s{hsum(re), hsum(im)};
  for (; i < n; ++i) {
    const double wa_r = w[i] * ar[i];
    const double wa_i = w[i] * ai[i];
    s.re += wa_r * br[i] + wa_i * bi[i];
    s.im += wa_r * bi[i] - wa_i * br[i];
  }
  return s;
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d wa = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(a + i));
    acc = _mm256_fmadd_pd(wa, _mm256_loadu_pd(b + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * a[i] * b[i];
  return s;
}

}  // namespace ltbx::kernels::avx2
