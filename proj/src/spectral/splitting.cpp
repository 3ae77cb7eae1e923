#include "ltbx/spectral/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ltbx/error.hpp"
#include "ltbx/fock/eval.hpp"
#include "ltbx/spectral/landau.hpp"

namespace ltbx::spectral {

using algebra::Scalar;
using algebra::Sign;

SplitCounts count_split(const std::vector<double>& E, double Lambda, Window w, const std::vector<double>& lambda_grid) {
  SplitCounts c;
  for (double lam : lambda_grid) {
    if (!(lam > 0)) throw ConfigError("splitting: lambda grid must be strictly positive");
    c.plus.push_back(std::count_if(E.begin(), E.end(), [&](double e) { return e > Lambda + lam && e < w.hi; }));
    c.minus.push_back(std::count_if(E.begin(), E.end(), [&](double e) { return e > w.lo && e < Lambda - lam; }));
  }
  return c;
}

std::vector<SectorEigen> oracle_sector_eigenvalues(int q, const fock::FieldSpec& spec, double lambda_floor,
                                                   const SplittingOptions& opt) {
  const double Lambda = landau_level(q, spec.B0);
  const Window w = level_window(q, spec.B0);
  std::vector<SectorEigen> out;
  int quiet = 0;
  for (int m = -q; m <= opt.max_sector; ++m) {
    const auto E = radial_pauli_oracle(spec, m, w, opt.oracle);
    double worst = 0;
    for (double e : E) {
      out.push_back({m, e});
      worst = std::max(worst, std::abs(e - Lambda));
    }
    quiet = worst < lambda_floor / 100 ? quiet + 1 : 0;
    if (quiet >= 3 && m >= 0) return out;
  }
  throw NumericalError("splitting: sector splittings did not fall below the lambda floor by m = " +
                       std::to_string(opt.max_sector));
}

std::vector<EffectivePotentialReport> effective_potential_ranges(int q, const fock::FieldSpec& spec, double radius) {
  std::vector<EffectivePotentialReport> out;
  if (q < 1) return out;
  fock::ScalarBindings bind{{Scalar::B0, spec.B0}, {Scalar::lambda, 0.0}};
  for (Sign s : {Sign::Minus, Sign::Plus}) {
    const auto cmp = algebra::compare_effective_potentials(q, s);
    fock::CompiledPoly derived(cmp.derived, spec, bind), printed(cmp.printed, spec, bind);
    EffectivePotentialReport rep;
    rep.sign = s;
    rep.derived = {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    rep.printed = rep.derived;
    const int nr = 40, nt = 64;
    for (int i = 0; i <= nr; ++i)
      for (int t = 0; t < (i == 0 ? 1 : nt); ++t) {
        const fock::point z = std::polar(radius * i / nr, 2 * std::numbers::pi * t / nt);
        const double d = derived(z).real(), p = printed(z).real();
        rep.derived = {std::min(rep.derived.min, d), std::max(rep.derived.max, d)};
        rep.printed = {std::min(rep.printed.min, p), std::max(rep.printed.max, p)};
      }
    out.push_back(rep);
  }
  return out;
}

SplittingReport splitting_counts(int q, const fock::FieldSpec& spec, const std::vector<double>& lambda_grid,
                                 const SplittingOptions& opt) {
  if (q < 0) throw ConfigError("splitting: q must be nonnegative");
  if (lambda_grid.empty()) throw ConfigError("splitting: empty lambda grid");
  SplittingReport rep;
  rep.q = q;
  rep.Lambda = landau_level(q, spec.B0);
  rep.window = level_window(q, spec.B0);
  rep.lambda_grid = lambda_grid;
  rep.single_pipeline = !spec.is_radial();

  if (opt.run_ritz) {
    const auto grid = fock::make_grid(spec, opt.N, opt.grid);
    const auto mats = landau_form_matrices(q, spec, opt.N, grid, opt.assembly);
    for (double e : ritz_values(mats))
      if (e > rep.window.lo && e < rep.window.hi) rep.ritz.push_back(e);
    rep.ritz_counts = count_split(rep.ritz, rep.Lambda, rep.window, lambda_grid);
  }
  if (opt.run_oracle && spec.is_radial()) {
    const double floor = *std::min_element(lambda_grid.begin(), lambda_grid.end());
    rep.oracle = oracle_sector_eigenvalues(q, spec, floor, opt);
    std::vector<double> E;
    for (const auto& s : rep.oracle) E.push_back(s.E);
    rep.oracle_counts = count_split(E, rep.Lambda, rep.window, lambda_grid);
  }
  const double radius = opt.inspection_radius > 0 ? opt.inspection_radius : spec.support_radius();
  if (radius > 0) rep.potentials = effective_potential_ranges(q, spec, radius);
  return rep;
}

}  // namespace ltbx::spectral
