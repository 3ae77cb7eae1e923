#include "ltbx/fock/toeplitz_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ltbx/error.hpp"

namespace ltbx::fock {

namespace {

// log of sum_j (a)_j/(b)_j x^j/j!, a, b > 0, x >= 0; rescaled to survive large x.
double log_kummer_positive(double a, double b, double x) {
  double term = 1.0, sum = 1.0, offset = 0.0;
  for (int j = 0; j < 100000; ++j) {
    term *= (a + j) / (b + j) * x / (j + 1.0);
    sum += term;
    if (sum > 1e250) {
      sum *= 1e-250;
      term *= 1e-250;
      offset += 250.0 * std::log(10.0);
    }
    // terms decrease once j exceeds x * a / b
    if (term < 1e-18 * sum && (j + 1.0) > x) break;
  }
  return offset + std::log(sum);
}

LogValue bump_term(const RadialBump& w, double B0, int n) {
  if (!w.centered()) throw ConfigError("Toeplitz oracle needs origin-centered bumps");
  if (w.k < 0 || !(w.R > 0)) throw ConfigError("Toeplitz oracle: bad bump");
  if (w.c == 0.0) return {};
  const double x = B0 * w.R * w.R / 2.0;
  const int k = w.k;
  LogValue v;
  v.sign = w.c > 0 ? 1 : -1;
  v.log_abs = std::log(std::abs(w.c)) + (n + 1) * std::log(x) + std::lgamma(k + 1.0) - std::lgamma(n + k + 2.0) - x +
              log_kummer_positive(k + 1.0, n + k + 2.0, x);
  return v;
}

LogValue log_sum(const std::vector<LogValue>& parts) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& p : parts)
    if (p.sign != 0) top = std::max(top, p.log_abs);
  if (!std::isfinite(top)) return {};
  double s = 0;
  for (const auto& p : parts)
    if (p.sign != 0) s += p.sign * std::exp(p.log_abs - top);
  if (s == 0.0) return {};
  return {top + std::log(std::abs(s)), s > 0 ? 1 : -1};
}

}  // namespace

double LogValue::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
double LogValue::log10_abs() const { return log_abs / std::log(10.0); }

LogValue radial_toeplitz_oracle(const RadialProfile& W, double B0, int n) {
  if (n < 0) throw ConfigError("Toeplitz oracle: n must be nonnegative");
  if (!(B0 > 0)) throw ConfigError("Toeplitz oracle: B0 must be positive");
  std::vector<LogValue> parts;
  if (W.constant != 0.0) parts.push_back({std::log(std::abs(W.constant)), W.constant > 0 ? 1 : -1});
  for (const auto& b : W.bumps) parts.push_back(bump_term(b, B0, n));
  return log_sum(parts);
}

std::vector<LogValue> radial_toeplitz_sequence(const RadialProfile& W, double B0, int count) {
  std::vector<LogValue> out;
  out.reserve(count);
  for (int n = 0; n < count; ++n) out.push_back(radial_toeplitz_oracle(W, B0, n));
  return out;
}

}  // namespace ltbx::fock
