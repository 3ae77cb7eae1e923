#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ltbx/fock/toeplitz_oracle.hpp"
#include "ltbx/spectral/eigen.hpp"

namespace ltbx::spectral {

enum class Ordering { DescendingAbs, Ascending };

struct SpectralResult {
  std::vector<double> eigenvalues;
  /// values with |v| below this are reported but untrusted
  double trust_floor = 0.0;
  int N = 0;
  int deflated = 0;
  Ordering ordering = Ordering::Ascending;

  bool trusted(std::size_t i) const { return std::abs(eigenvalues[i]) >= trust_floor; }
};

/// Toeplitz-style result: sorted by decreasing |value|, floor 1e-12 * max|value|.
SpectralResult toeplitz_result(const PencilEigen& e, int N);
/// Hamiltonian-style result: ascending, floor 1e-12 * max|value|.
SpectralResult hamiltonian_result(const PencilEigen& e, int N);

/// Xi(lambda) = |ln lambda| / (2 ln|ln lambda|), lambda in (0, e^-e).
double xi(double lambda);

struct DecayRow {
  int rank = 0;            // 1-based position in the non-increasing list
  double log_lambda = 0;   // natural log
  double s = 0;            // (rank! lambda)^(1/rank)
  double s_index0 = 0;     // (n! lambda)^(1/n) with n = rank - 1; NaN at rank 1
  bool trusted = true;
};

struct DecayReport {
  std::vector<DecayRow> rows;
  std::optional<double> reference_limit;  // B0 R^2/2 for a disk of radius R
  std::optional<double> capacity_bound;      // (B0/2) R
};

/// log_lambda: natural logs of the positive eigenvalues in non-increasing
/// order. Rows stop at the first untrusted entry when stop_at_floor is set.
DecayReport decay_diagnostic(const std::vector<double>& log_lambda, const std::vector<bool>& trusted = {},
                             bool stop_at_floor = false);
DecayReport decay_diagnostic(const SpectralResult& res, bool stop_at_floor = true);
DecayReport decay_diagnostic(const std::vector<fock::LogValue>& oracle);
void attach_disk_reference(DecayReport& rep, double B0, double R);

struct CountingRow {
  double lambda = 0;
  long count = 0;
  double xi = 0;            // NaN outside the domain of xi
  double ratio_paper = 0;   // count / xi
  double ratio_oracle = 0;  // count ln|ln lambda| / |ln lambda|
};

struct CountingReport {
  std::vector<CountingRow> rows;
};

/// n(lambda) = #{n : lambda_n > lambda}, strict.
CountingReport counting_report(const std::vector<double>& values, const std::vector<double>& lambda_grid);
CountingReport counting_report(const std::vector<fock::LogValue>& values, const std::vector<double>& lambda_grid);
/// Enumerates the oracle sequence until it drops below the smallest grid
/// value. The sequence must be eventually decreasing.
CountingReport oracle_counting(const fock::RadialProfile& W, double B0, const std::vector<double>& lambda_grid,
                               int n_cap = 100000);
CountingRow counting_row(double lambda, long count);

/// lambda_max, lambda_max/10, ... down to lambda_min, per_decade points per decade.
std::vector<double> log_grid(double lambda_max, double lambda_min, int per_decade = 1);

}  // namespace ltbx::spectral
