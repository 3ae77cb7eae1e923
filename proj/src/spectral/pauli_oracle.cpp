#include "ltbx/spectral/pauli_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ltbx/error.hpp"

namespace ltbx::spectral {

namespace {

struct Tridiag {
  std::vector<double> d;  // diagonal
  std::vector<double> e;  // off-diagonal, e[i] couples i and i+1
};

Tridiag discretize(const fock::FieldSpec& spec, int m, double h, double R_big) {
  const int n = static_cast<int>(std::lround(R_big / h));
  Tridiag T;
  T.d.resize(n);
  T.e.resize(n > 0 ? n - 1 : 0);
  for (int i = 0; i < n; ++i) {
    const double r = (i + 0.5) * h;
    const double rm = i * h, rp = (i + 1) * h;
    const double a = m / r - spec.A_theta(r);
    const double B = spec.B0 + spec.b_value({r, 0.0});
    const double W = a * a - B + spec.V_value({r, 0.0});
    T.d[i] = (rp + rm) / (r * h * h) + W;
    if (i + 1 < n) {
      const double r2 = (i + 1.5) * h;
      T.e[i] = -rp / (h * h * std::sqrt(r * r2));
    }
  }
  return T;
}

// number of eigenvalues strictly below x
int sturm_count(const Tridiag& T, double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < T.d.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : T.e[i - 1] * T.e[i - 1];
    q = T.d[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0) ++count;
  }
  return count;
}

// k-th smallest eigenvalue (0-based) inside [lo, hi], which must bracket it
double kth_eigenvalue(const Tridiag& T, int k, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(T, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Eigenvalue indices in (lo, hi) on the fine grid; values on both grids by
// index, then Richardson.
std::vector<double> window_eigenvalues(const fock::FieldSpec& spec, int m, Window w, double h, double R_big) {
  const Tridiag fine = discretize(spec, m, h / 2, R_big);
  const int k0 = sturm_count(fine, w.lo), k1 = sturm_count(fine, w.hi);
  if (k1 <= k0) return {};
  const Tridiag coarse = discretize(spec, m, h, R_big);
  // generous bracket for the coarse grid
  const double pad = 0.5 * (w.hi - w.lo) + 1.0;
  std::vector<double> out;
  for (int k = k0; k < k1; ++k) {
    const double ef = kth_eigenvalue(fine, k, w.lo, w.hi);
    const double ec = kth_eigenvalue(coarse, k, w.lo - pad, w.hi + pad);
    out.push_back((4.0 * ef - ec) / 3.0);
  }
  return out;
}

}  // namespace

double landau_level(int q, double B0) { return 2.0 * q * B0; }

Window level_window(int q, double B0) { return {landau_level(q, B0) - B0, landau_level(q, B0) + B0}; }

std::vector<double> radial_pauli_oracle(const fock::FieldSpec& spec, int m, Window window,
                                        const PauliOracleOptions& opt) {
  if (!spec.is_radial()) throw ConfigError("radial Pauli oracle needs a radial field spec");
  if (!(window.lo < window.hi)) throw ConfigError("oracle window must satisfy lo < hi");
  const double B0 = spec.B0;
  const int q = static_cast<int>(std::floor((window.lo + B0) / (2 * B0)));
  const Window lw = level_window(std::max(q, 0), B0);
  if (window.lo < lw.lo || window.hi > lw.hi)
    throw ConfigError("oracle window must lie inside one Landau window (Lambda_q - B0, Lambda_q + B0)");

  const double ell = 1.0 / std::sqrt(B0);
  const double h = opt.h * ell;
  double R = opt.R_big;
  if (R <= 0) {
    const double peak = std::sqrt(2.0 * (std::abs(m) + q + 1) / B0);
    R = spec.support_radius() + peak + 12.0 * ell;
  }
  std::vector<double> prev = window_eigenvalues(spec, m, window, h, R);
  for (int doubling = 0; doubling < 4; ++doubling) {
    std::vector<double> next = window_eigenvalues(spec, m, window, h, 2 * R);
    bool stable = next.size() == prev.size();
    for (std::size_t i = 0; stable && i < next.size(); ++i) stable = std::abs(next[i] - prev[i]) < opt.stability_tol;
    if (stable) return prev;
    prev = std::move(next);
    R *= 2;
  }
  throw NumericalError("radial Pauli oracle: eigenvalues not stable under doubling R_big (m = " +
                       std::to_string(m) + ")");
}

}  // namespace ltbx::spectral
