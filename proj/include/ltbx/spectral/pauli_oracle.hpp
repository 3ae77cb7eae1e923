#pragma once

#include <vector>

#include "ltbx/fock/field_spec.hpp"

namespace ltbx::spectral {

struct PauliOracleOptions {
  /// coarse grid step in magnetic lengths; the fine grid uses h/2
  double h = 0.01;
  /// 0 picks a radius from the sector's Gaussian decay, then doubles it
  /// until window eigenvalues move less than stability_tol
  double R_big = 0.0;
  double stability_tol = 1e-8;
};

struct Window {
  double lo = 0;
  double hi = 0;
};

/// Landau level Lambda_q = 2 q B0.
double landau_level(int q, double B0);
/// (Lambda_q - B0, Lambda_q + B0)
Window level_window(int q, double B0);

/// Radial operator on e^(i m theta) f(r):
///   -f'' - f'/r + (m/r - A_theta)^2 f - B f + V f,
/// cell-centered second-order differences on (0, R_big) with Dirichlet at
/// R_big, eigenvalues by Sturm bisection, Richardson over h and h/2.
/// Returns the eigenvalues inside the window, ascending. The window has to
/// fit inside one level window (ConfigError otherwise).
std::vector<double> radial_pauli_oracle(const fock::FieldSpec& spec, int m, Window window,
                                        const PauliOracleOptions& opt = {});

}  // namespace ltbx::spectral
