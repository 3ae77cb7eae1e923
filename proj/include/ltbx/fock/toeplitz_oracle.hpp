#pragma once

#include <vector>

#include "ltbx/fock/field_spec.hpp"

namespace ltbx::fock {

/// sign * exp(log_abs); sign 0 means exactly zero.
struct LogValue {
  double log_abs = -1.0 / 0.0;
  int sign = 0;

  double value() const;
  double log10_abs() const;
};

/// W(r) = constant + sum of origin-centered bumps. k = 0 bumps are disk
/// indicators c * 1{r < R}.
struct RadialProfile {
  double constant = 0.0;
  std::vector<RadialBump> bumps;

  static RadialProfile disk(double R, double c = 1.0) { return {0.0, {RadialBump{{0, 0}, c, R, 0}}}; }
};

/// Eigenvalue of the Toeplitz operator with symbol W on angular sector n at
/// b = 0:  int W r^(2n+1) e^(-B0 r^2/2) dr / int r^(2n+1) e^(-B0 r^2/2) dr.
/// For a bump, with x = B0 R^2/2 and Kummer's transformation,
///   lambda_n = c x^(n+1) k!/(n+k+1)! e^(-x) sum_j (k+1)_j/(n+k+2)_j x^j/j!
/// whose terms are all positive; evaluated in the log domain.
LogValue radial_toeplitz_oracle(const RadialProfile& W, double B0, int n);
std::vector<LogValue> radial_toeplitz_sequence(const RadialProfile& W, double B0, int count);

}  // namespace ltbx::fock
