#include "ltbx/fock/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "ltbx/error.hpp"

namespace ltbx::fock {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1, p1 = x;
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1)};
}

GaussLegendre compute_gl(int n) {
  GaussLegendre g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1 - x * x) * dp * dp);
    g.x[i] = -x;
    g.x[n - 1 - i] = x;
    g.w[i] = w;
    g.w[n - 1 - i] = w;
  }
  return g;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) throw ConfigError("Gauss-Legendre order must be positive");
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

double truncation_radius(const FieldSpec& spec, int N, double eps_tail) {
  const double n_safe = std::max(N, 2);
  const double arg = 2.0 * (std::log(1.0 / eps_tail) + (N + 1) * std::log(n_safe));
  return spec.support_radius() + std::sqrt(std::max(0.0, arg) / spec.B0);
}

QuadratureGrid make_grid(const FieldSpec& spec, int N, const GridOptions& opt) {
  if (N < 1) throw ConfigError("basis size N must be at least 1");
  if (opt.nodes_per_panel < 2 || !(opt.panel_width > 0)) throw ConfigError("bad quadrature options");
  QuadratureGrid g;
  g.N = N;
  g.R_max = truncation_radius(spec, N, opt.eps_tail);
  g.n_theta = opt.n_theta > 0 ? opt.n_theta : 4 * N + 16;
  if (g.n_theta < 4 * N + 16) throw ConfigError("n_theta must be at least 4N+16");

  std::vector<double> breaks = {0.0, g.R_max};
  for (const auto* list : {&spec.b, &spec.V})
    for (const auto& x : *list) {
      const double c = std::abs(x.center);
      for (double r : {c + x.R, c - x.R})
        if (r > 0 && r < g.R_max) breaks.push_back(r);
    }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const double h = opt.panel_width / std::sqrt(spec.B0);
  const auto& gl = gauss_legendre(opt.nodes_per_panel);
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s], b = breaks[s + 1];
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
    const double len = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * len;
      for (std::size_t i = 0; i < gl.x.size(); ++i) {
        const double r = lo + 0.5 * len * (gl.x[i] + 1.0);
        g.r.push_back(r);
        g.w.push_back(0.5 * len * gl.w[i] * r);
      }
    }
  }
  return g;
}

}  // namespace ltbx::fock
