#pragma once

#include <vector>

#include "ltbx/fock/field_spec.hpp"

namespace ltbx::fock {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussLegendre& gauss_legendre(int n);

struct GridOptions {
  int nodes_per_panel = 20;
  /// radial panel length in magnetic lengths 1/sqrt(B0)
  double panel_width = 0.5;
  /// 0 picks 4N + 16
  int n_theta = 0;
  double eps_tail = 1e-16;
};

/// Polar product grid: composite Gauss-Legendre in r on [0, R_max] with panel
/// breaks at every bump rim, uniform trapezoid in theta.
struct QuadratureGrid {
  std::vector<double> r;
  std::vector<double> w;  // radial weights including the Jacobian r
  int n_theta = 0;
  double R_max = 0;
  int N = 0;  // largest basis size the grid was built for
};

/// Truncation radius: support radius + sqrt(2 (ln(1/eps) + (N+1) ln max(N,2)) / B0).
double truncation_radius(const FieldSpec& spec, int N, double eps_tail = 1e-16);
QuadratureGrid make_grid(const FieldSpec& spec, int N, const GridOptions& opt = {});

}  // namespace ltbx::fock
