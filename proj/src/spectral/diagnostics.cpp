#include "ltbx/spectral/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ltbx/error.hpp"

namespace ltbx::spectral {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SpectralResult finish(std::vector<double> v, int N, int deflated, Ordering ord) {
  SpectralResult r;
  r.N = N;
  r.deflated = deflated;
  r.ordering = ord;
  double top = 0;
  for (double x : v) top = std::max(top, std::abs(x));
  r.trust_floor = 1e-12 * top;
  if (ord == Ordering::DescendingAbs)
    std::stable_sort(v.begin(), v.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  else
    std::sort(v.begin(), v.end());
  r.eigenvalues = std::move(v);
  return r;
}

}  // namespace

SpectralResult toeplitz_result(const PencilEigen& e, int N) {
  return finish(e.values, N, e.deflated, Ordering::DescendingAbs);
}

SpectralResult hamiltonian_result(const PencilEigen& e, int N) {
  return finish(e.values, N, e.deflated, Ordering::Ascending);
}

double xi(double lambda) {
  if (!(lambda > 0) || !(lambda < std::exp(-std::numbers::e)))
    throw ConfigError("xi: lambda must lie in (0, e^-e)");
  const double L = std::abs(std::log(lambda));
  return 0.5 * L / std::log(L);
}

DecayReport decay_diagnostic(const std::vector<double>& log_lambda, const std::vector<bool>& trusted,
                             bool stop_at_floor) {
  DecayReport rep;
  for (std::size_t i = 0; i < log_lambda.size(); ++i) {
    const bool ok = trusted.empty() || trusted[i];
    if (stop_at_floor && !ok) break;
    DecayRow row;
    row.rank = static_cast<int>(i) + 1;
    row.log_lambda = log_lambda[i];
    row.s = std::exp((std::lgamma(row.rank + 1.0) + row.log_lambda) / row.rank);
    const int n0 = row.rank - 1;
    row.s_index0 = n0 == 0 ? kNaN : std::exp((std::lgamma(n0 + 1.0) + row.log_lambda) / n0);
    row.trusted = ok;
    rep.rows.push_back(row);
  }
  return rep;
}

DecayReport decay_diagnostic(const SpectralResult& res, bool stop_at_floor) {
  std::vector<double> logs;
  std::vector<bool> ok;
  std::vector<double> pos;
  for (std::size_t i = 0; i < res.eigenvalues.size(); ++i)
    if (res.eigenvalues[i] > 0) pos.push_back(res.eigenvalues[i]);
  std::sort(pos.begin(), pos.end(), std::greater<>());
  for (double v : pos) {
    logs.push_back(std::log(v));
    ok.push_back(v >= res.trust_floor);
  }
  return decay_diagnostic(logs, ok, stop_at_floor);
}

DecayReport decay_diagnostic(const std::vector<fock::LogValue>& oracle) {
  std::vector<double> logs;
  for (const auto& v : oracle) {
    if (v.sign <= 0) break;
    logs.push_back(v.log_abs);
  }
  std::sort(logs.begin(), logs.end(), std::greater<>());
  return decay_diagnostic(logs);
}

void attach_disk_reference(DecayReport& rep, double B0, double R) {
  rep.reference_limit = B0 * R * R / 2.0;
  rep.capacity_bound = B0 / 2.0 * R;
}

CountingRow counting_row(double lambda, long count) {
  CountingRow row;
  row.lambda = lambda;
  row.count = count;
  const double L = std::abs(std::log(lambda));
  if (lambda > 0 && lambda < std::exp(-std::numbers::e)) {
    row.xi = xi(lambda);
    row.ratio_paper = count / row.xi;
    row.ratio_oracle = count * std::log(L) / L;
  } else {
    row.xi = row.ratio_paper = row.ratio_oracle = kNaN;
  }
  return row;
}

CountingReport counting_report(const std::vector<double>& values, const std::vector<double>& lambda_grid) {
  CountingReport rep;
  for (double lam : lambda_grid) {
    if (!(lam > 0)) throw ConfigError("counting: lambda grid must be strictly positive");
    const long c = std::count_if(values.begin(), values.end(), [&](double v) { return v > lam; });
    rep.rows.push_back(counting_row(lam, c));
  }
  return rep;
}

CountingReport counting_report(const std::vector<fock::LogValue>& values, const std::vector<double>& lambda_grid) {
  CountingReport rep;
  for (double lam : lambda_grid) {
    if (!(lam > 0)) throw ConfigError("counting: lambda grid must be strictly positive");
    const double ll = std::log(lam);
    const long c = std::count_if(values.begin(), values.end(), [&](const fock::LogValue& v) { return v.sign > 0 && v.log_abs > ll; });
    rep.rows.push_back(counting_row(lam, c));
  }
  return rep;
}

CountingReport oracle_counting(const fock::RadialProfile& W, double B0, const std::vector<double>& lambda_grid,
                               int n_cap) {
  double lmin = std::numeric_limits<double>::infinity();
  for (double l : lambda_grid) lmin = std::min(lmin, l);
  const double stop = std::log(lmin);
  std::vector<fock::LogValue> seq;
  int below = 0;
  for (int n = 0; n < n_cap && below < 8; ++n) {
    seq.push_back(fock::radial_toeplitz_oracle(W, B0, n));
    below = (seq.back().sign <= 0 || seq.back().log_abs < stop) ? below + 1 : 0;
  }
  if (below < 8) throw NumericalError("oracle counting: sequence did not drop below the smallest lambda");
  return counting_report(seq, lambda_grid);
}

std::vector<double> log_grid(double lambda_max, double lambda_min, int per_decade) {
  if (!(lambda_max > 0) || !(lambda_min > 0) || lambda_min > lambda_max || per_decade < 1)
    throw ConfigError("lambda grid: need 0 < min <= max and per_decade >= 1");
  std::vector<double> g;
  const double lmax = std::log10(lambda_max), lmin = std::log10(lambda_min);
  const int steps = static_cast<int>(std::floor((lmax - lmin) * per_decade + 1e-9));
  for (int i = 0; i <= steps; ++i) g.push_back(std::pow(10.0, lmax - static_cast<double>(i) / per_decade));
  return g;
}

}  // namespace ltbx::spectral
