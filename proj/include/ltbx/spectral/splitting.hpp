#pragma once

#include <optional>
#include <vector>

#include "ltbx/algebra/landau_forms.hpp"
#include "ltbx/fock/matrices.hpp"
#include "ltbx/spectral/diagnostics.hpp"
#include "ltbx/spectral/pauli_oracle.hpp"

namespace ltbx::spectral {

struct SplittingOptions {
  int N = 25;                      // Rayleigh-Ritz basis size
  bool run_ritz = true;
  bool run_oracle = true;          // radial specs only
  int max_sector = 400;            // hard cap on the oracle's angular momentum
  fock::GridOptions grid;
  fock::AssemblyOptions assembly;
  PauliOracleOptions oracle;
  /// radius of the disk on which W+- are inspected; 0 uses the support radius
  double inspection_radius = 0.0;
};

struct SectorEigen {
  int m = 0;
  double E = 0;
};

struct SplitCounts {
  std::vector<long> plus;   // N_+(lambda) per grid point
  std::vector<long> minus;  // N_-(lambda)
};

struct PotentialRange {
  double min = 0;
  double max = 0;
};

struct EffectivePotentialReport {
  algebra::Sign sign = algebra::Sign::Minus;
  PotentialRange derived;  // first-principles W (ground truth)
  PotentialRange printed;  // formula as printed
};

struct SplittingReport {
  int q = 0;
  double Lambda = 0;
  Window window;
  std::vector<double> lambda_grid;
  std::vector<double> ritz;            // Ritz values inside the window
  std::vector<SectorEigen> oracle;     // per-sector eigenvalues inside the window
  std::optional<SplitCounts> ritz_counts;
  std::optional<SplitCounts> oracle_counts;
  bool single_pipeline = false;        // general spec: Rayleigh-Ritz only
  std::vector<EffectivePotentialReport> potentials;  // q >= 1
};

/// N_+(lambda) = #{E in (Lambda + lambda, s_+)}, N_-(lambda) = #{E in (s_-, Lambda - lambda)}.
SplitCounts count_split(const std::vector<double>& E, double Lambda, Window w, const std::vector<double>& lambda_grid);

/// Oracle eigenvalues in the level window for sectors m = -q, -q+1, ...;
/// stops once three consecutive sectors have every eigenvalue within
/// lambda_floor / 100 of Lambda (and m has passed the last sector carrying a
/// larger splitting).
std::vector<SectorEigen> oracle_sector_eigenvalues(int q, const fock::FieldSpec& spec, double lambda_floor,
                                                   const SplittingOptions& opt = {});

/// min / max of W+- over a polar grid on the inspection disk, lambda -> 0.
std::vector<EffectivePotentialReport> effective_potential_ranges(int q, const fock::FieldSpec& spec, double radius);

SplittingReport splitting_counts(int q, const fock::FieldSpec& spec, const std::vector<double>& lambda_grid,
                                 const SplittingOptions& opt = {});

}  // namespace ltbx::spectral
