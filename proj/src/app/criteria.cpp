#include "ltbx/app/criteria.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "golden_data.hpp"
#include "ltbx/algebra/landau_forms.hpp"
#include "ltbx/algebra/serialize.hpp"
#include "ltbx/error.hpp"
#include "ltbx/fock/matrices.hpp"
#include "ltbx/fock/toeplitz_oracle.hpp"
#include "ltbx/spectral/diagnostics.hpp"
#include "ltbx/spectral/landau.hpp"
#include "ltbx/spectral/splitting.hpp"

namespace ltbx::app {

namespace {

using algebra::Field;
using algebra::FuncPoly;
using algebra::GaussianRational;
using algebra::Scalar;
using algebra::Sign;

std::string num(double v, int digits = 6) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

FuncPoly B0(int p = 1) { return FuncPoly::scalar(Scalar::B0, p); }

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long pow4(int q) {
  long v = 1;
  for (int i = 0; i < q; ++i) v *= 4;
  return v;
}

void add(CriterionResult& r, std::string name, bool pass, std::string detail = "") {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
  if (!pass) r.pass = false;
}

// Criterion 1: Z_1, Z_2 and X_1 against golden files.
void exact_values(CriterionResult& r) {
  r.title = "exact values Z_1, Z_2, X_1 (golden files)";
  r.time_limit = 1.0;
  r.kind = FailureKind::Divergence;
  const FuncPoly z1 = algebra::z_poly(1), z2 = algebra::z_poly(2);
  const algebra::LinDiffOp x1 = algebra::x_op(1);

  const bool z1_ok = algebra::dump_golden(algebra::to_json(z1)) == golden::z1;
  add(r, "z_poly(1) = 2b", z1_ok, z1.to_string());
  const bool x1_ok = algebra::dump_golden(algebra::to_json(x1)) == golden::x1;
  add(r, "x_op(1) = 2BU + Lap U", x1_ok, x1.to_string());
  const bool z2_verified = algebra::dump_golden(algebra::to_json(z2)) == golden::z2;
  add(r, "z_poly(2) matches the independently verified golden 8b^2 + 16B0b + 2Lap b", z2_verified, z2.to_string());
  if (!z1_ok || !x1_ok || !z2_verified) r.kind = FailureKind::Identity;

  const FuncPoly printed = algebra::funcpoly_from_json(nlohmann::json::parse(golden::z2_printed));
  const bool z2_printed = algebra::dump_golden(algebra::to_json(z2)) == golden::z2_printed;
  const FuncPoly diff = z2 - printed;
  add(r, "z_poly(2) = 8b^2 + 12B0b + 2Lap b (printed value)", z2_printed,
      "engine - printed = " + diff.to_string());
  r.data["z2_engine"] = z2.to_string();
  r.data["z2_printed"] = printed.to_string();
  r.data["z2_difference"] = algebra::to_json(diff);
}

// Criterion 2: structure of Z_q, X_q, Y_q for q <= 4.
void structure(CriterionResult& r) {
  r.title = "structure of Z_q, X_q, Y_q, q <= 4";
  r.time_limit = 30.0;
  for (int q = 1; q <= 4; ++q) {
    const std::string tag = "q=" + std::to_string(q) + ": ";
    const FuncPoly vac = algebra::vacuum_form(algebra::Q_pow(q) * algebra::Qbar_pow(q));
    const FuncPoly Cq = B0(q) * GaussianRational(factorial(q) << q);
    add(r, tag + "constant term q!(2B0)^q", vac.field_free_part() == Cq && algebra::landau_constant(q) == Cq,
        vac.field_free_part().to_string());

    algebra::MonomialKey lin;
    lin.scalars[static_cast<std::size_t>(Scalar::B0)] = static_cast<std::uint8_t>(q - 1);
    lin.atoms.push_back({Field::b, 0, 0});
    const GaussianRational want((factorial(q) << q) * q);
    const FuncPoly z = algebra::z_poly(q);
    add(r, tag + "linear term 2^q q! q B0^(q-1) b", z.coefficient(lin) == want && vac.coefficient(lin) == want,
        z.coefficient(lin).to_string());

    const algebra::LinDiffOp x = algebra::x_op(q), y = algebra::y_op(q);
    const auto wz = z.homogeneous_weight(), wx = x.to_funcpoly().homogeneous_weight(),
               wy = y.to_funcpoly().homogeneous_weight();
    add(r, tag + "weights 2q / 2q+2 / 2q+3", wz == 2 * q && wx == 2 * q + 2 && wy == 2 * q + 3,
        std::to_string(wz.value_or(-1)) + " / " + std::to_string(wx.value_or(-1)) + " / " +
            std::to_string(wy.value_or(-1)));
    add(r, tag + "x_op top coefficient 4^q at (q,q)", x.coefficient(q, q) == FuncPoly(pow4(q)) && x.order() == 2 * q,
        x.coefficient(q, q).to_string());
    add(r, tag + "y_op top coefficient -2i 4^q at (q,q+1)",
        y.coefficient(q, q + 1) == FuncPoly(GaussianRational(0, -2 * pow4(q))) && y.order() == 2 * q + 1,
        y.coefficient(q, q + 1).to_string());
  }
}

// Criterion 3: the scalar identity behind the effective potentials.
void scalar_identity(CriterionResult& r) {
  r.title = "scalar identity (mu^2 - tau^2) - 2 mu Lambda + Lambda^2 = lambda (Lambda - s), q <= 3";
  r.kind = FailureKind::Divergence;
  const FuncPoly mu = FuncPoly::scalar(Scalar::mu), tau = FuncPoly::scalar(Scalar::tau),
                 Lam = FuncPoly::scalar(Scalar::Lambda), lam = FuncPoly::scalar(Scalar::lambda),
                 s = FuncPoly::scalar(Scalar::s);
  const FuncPoly lhs = (mu * mu - tau * tau) - mu * Lam * GaussianRational(2) + Lam * Lam;
  const FuncPoly rhs = lam * (Lam - s);
  bool minus_ok = true;
  for (int q = 1; q <= 3; ++q) {
    const FuncPoly Cq = algebra::landau_constant(q);
    for (Sign sg : {Sign::Minus, Sign::Plus}) {
      const std::string tag = std::string("q=") + std::to_string(q) + " sign " + algebra::sign_char(sg) + ": ";
      const FuncPoly l = algebra::substitute_level_scalars(lhs, q, sg);
      const FuncPoly want = algebra::substitute_level_scalars(rhs, q, sg);
      add(r, tag + "scalar identity", l == want, l.to_string() + " vs " + want.to_string());
      const FuncPoly c = algebra::substitute_level_scalars(algebra::derive_effective_potential(q, sg).constant, q, sg);
      const FuncPoly wc = algebra::substitute_level_scalars(rhs * Cq, q, sg);
      add(r, tag + "field-free coefficient = lambda (Lambda - s) C_q", c == wc, c.to_string() + " vs " + wc.to_string());
      if (sg == Sign::Minus && (l != want || c != wc)) minus_ok = false;
    }
  }
  if (!minus_ok) r.kind = FailureKind::Identity;
}

// Criterion 4: printed effective potential vs first-principles expansion.
void effective_potential(CriterionResult& r) {
  r.title = "effective potential: printed formula vs first-principles expansion (sign -, q = 1, 2)";
  for (int q = 1; q <= 2; ++q) {
    const algebra::PotentialComparison c = algebra::compare_effective_potentials(q, Sign::Minus);
    const std::string tag = "q=" + std::to_string(q) + ": ";
    if (c.agree()) {
      add(r, tag + "exact agreement", true);
    } else {
      // A non-empty, machine-generated term diff is the accepted outcome.
      const bool documented = !c.difference.is_zero() && c.printed - c.derived == c.difference;
      add(r, tag + "term-level diff generated (" + std::to_string(c.difference.terms().size()) + " terms)", documented,
          "printed - derived = " + c.difference.to_string());
    }
    nlohmann::json d;
    d["printed"] = c.printed.to_string();
    d["derived"] = c.derived.to_string();
    d["difference"] = algebra::to_json(c.difference);
    d["difference_text"] = c.difference.to_string();
    d["agree"] = c.agree();
    r.data["q" + std::to_string(q)] = d;
  }
}

// Criterion 5: matrix Toeplitz pipeline vs the closed-form oracle.
void toeplitz_equivalence(CriterionResult& r, int threads) {
  r.title = "Toeplitz matrix pipeline vs radial oracle (b = 0, disk-like bump, N = 30)";
  r.time_limit = 10.0;
  const int N = 30;
  fock::FieldSpec spec;
  spec.B0 = 2.0;
  spec.V = {fock::RadialBump{{0, 0}, 1.0, 1.0, 2}};
  const auto grid = fock::make_grid(spec, N);
  fock::AssemblyOptions opt;
  opt.threads = threads;
  opt.allow_radial = false;  // full 2D quadrature
  const CMatrix G = fock::gram_matrix(spec, N, grid, opt);
  const CMatrix M = fock::weighted_matrix(FuncPoly::atom(Field::V), spec, N, grid, {{Scalar::B0, spec.B0}}, opt);
  const auto res = spectral::toeplitz_result(spectral::gen_eigensolve(M, G), N);
  const auto oracle = fock::radial_toeplitz_sequence({0.0, spec.V}, spec.B0, N);
  std::vector<double> ref;
  for (const auto& v : oracle) ref.push_back(v.value());
  std::sort(ref.begin(), ref.end(), std::greater<>());

  double worst = 0;
  int compared = 0;
  for (std::size_t i = 0; i < res.eigenvalues.size(); ++i) {
    if (res.eigenvalues[i] <= 1e-12) continue;
    worst = std::max(worst, std::abs(res.eigenvalues[i] - ref[i]) / ref[i]);
    ++compared;
  }
  add(r, "eigenvalues above 1e-12 agree to relative 1e-6", compared > 0 && worst <= 1e-6,
      std::to_string(compared) + " compared, max relative difference " + num(worst, 3));
}

// Criterion 6: (n! lambda_n)^(1/n) for the disk at x = 1.
void decay(CriterionResult& r) {
  r.title = "super-exponential decay (n! lambda_n)^(1/n), disk x = B0 R^2/2 = 1";
  const auto seq = fock::radial_toeplitz_sequence(fock::RadialProfile::disk(1.0), 2.0, 100);
  const auto rep = spectral::decay_diagnostic(seq);
  for (auto [n, tol] : {std::pair{40, 0.05}, std::pair{100, 0.02}}) {
    const auto& row = rep.rows.at(n - 1);
    add(r, "n=" + std::to_string(n) + " within " + num(tol * 100, 2) + "% of 1", std::abs(row.s - 1.0) <= tol,
        "s_n = " + num(row.s, 6) + " (0-based index convention: " + num(row.s_index0, 6) + ")");
  }
}

// Criterion 7: counting function of the disk oracle at lambda = 1e-60.
void counting(CriterionResult& r) {
  r.title = "counting asymptotics at lambda = 1e-60 (disk, x = 1)";
  r.time_limit = 1.0;
  r.kind = FailureKind::Divergence;
  const auto rep = spectral::oracle_counting(fock::RadialProfile::disk(1.0), 2.0, {1e-60});
  const auto& row = rep.rows.at(0);
  add(r, "n ln|ln lambda| / |ln lambda| in [0.8, 1.6]", row.ratio_oracle >= 0.8 && row.ratio_oracle <= 1.6,
      "n = " + std::to_string(row.count) + ", ratio " + num(row.ratio_oracle, 6) + "; n / Xi = " +
          num(row.ratio_paper, 6) + " (reported, not asserted)");
  r.data["count"] = row.count;
  r.data["ratio_oracle"] = row.ratio_oracle;
  r.data["ratio_paper"] = row.ratio_paper;
}

// Criterion 8: Ritz values at b = V = 0 are the Landau levels.
void landau_levels(CriterionResult& r, int threads) {
  r.title = "Landau levels recovered at b = V = 0, q <= 3, N = 20";
  const int N = 20;
  fock::FieldSpec spec;
  spec.B0 = 1.5;
  const auto grid = fock::make_grid(spec, N);
  fock::AssemblyOptions opt;
  opt.threads = threads;
  for (int q = 0; q <= 3; ++q) {
    const double L = spectral::landau_level(q, spec.B0);
    const auto vals = spectral::ritz_values(spectral::landau_form_matrices(q, spec, N, grid, opt));
    double worst = 0;
    for (double v : vals) worst = std::max(worst, std::abs(v - L) / (q == 0 ? spec.B0 : L));
    add(r, "q=" + std::to_string(q) + ": Ritz values = 2qB0 to 1e-10" + (q == 0 ? " (relative to B0)" : ""),
        vals.size() == static_cast<std::size_t>(N) && worst <= 1e-10,
        std::to_string(vals.size()) + " values, max relative difference " + num(worst, 3));
  }
}

// Criterion 9: Rayleigh-Ritz vs radial ODE oracle for a radial b.
void splitting_cross(CriterionResult& r, int threads) {
  r.title = "splitting: Rayleigh-Ritz vs radial ODE oracle (b bump c = 0.3B0, R = 1, k = 12, q = 1, N = 25)";
  r.time_limit = 120.0;
  r.kind = FailureKind::Divergence;
  fock::FieldSpec spec;
  spec.B0 = 1.0;
  spec.b = {fock::RadialBump{{0, 0}, 0.3 * spec.B0, 1.0, 12}};
  spectral::SplittingOptions opt;
  opt.N = 25;
  opt.assembly.threads = threads;
  const auto grid = spectral::log_grid(1e-1 * spec.B0, 1e-6 * spec.B0, 4);
  const auto rep = spectral::splitting_counts(1, spec, grid, opt);

  const double cut = 1e-6 * spec.B0;
  std::vector<double> rr, orc;
  for (double e : rep.ritz)
    if (std::abs(e - rep.Lambda) > cut) rr.push_back(e);
  for (const auto& s : rep.oracle)
    if (std::abs(s.E - rep.Lambda) > cut) orc.push_back(s.E);
  std::sort(rr.begin(), rr.end());
  std::sort(orc.begin(), orc.end());
  add(r, "same number of eigenvalues with |E - Lambda| > 1e-6 B0", rr.size() == orc.size(),
      std::to_string(rr.size()) + " Ritz vs " + std::to_string(orc.size()) + " oracle");
  double worst = 0;
  std::ostringstream pairs;
  for (std::size_t i = 0; i < std::min(rr.size(), orc.size()); ++i) {
    worst = std::max(worst, std::abs(rr[i] - orc[i]) / std::abs(orc[i]));
    pairs << (i ? "; " : "") << "E-Lambda " << num(rr[i] - rep.Lambda, 5) << " vs " << num(orc[i] - rep.Lambda, 5);
  }
  add(r, "eigenvalues agree to relative 1e-3", !rr.empty() && worst <= 1e-3,
      "max relative difference " + num(worst, 3) + " [" + pairs.str() + "]");
  const bool counts = rep.ritz_counts && rep.oracle_counts && rep.ritz_counts->plus == rep.oracle_counts->plus &&
                      rep.ritz_counts->minus == rep.oracle_counts->minus;
  std::ostringstream cs;
  if (rep.ritz_counts && rep.oracle_counts)
    for (std::size_t i = 0; i < grid.size(); ++i)
      cs << (i ? " " : "") << num(grid[i], 3) << ":" << rep.ritz_counts->plus[i] << "/" << rep.oracle_counts->plus[i];
  add(r, "N_+- counts agree on the lambda grid 1e-1 .. 1e-6 B0", counts, "lambda:N+ Ritz/oracle " + cs.str());
}

// Criterion 10: b = 0, V >= 0 at q = 0.
void electric_only(CriterionResult& r, int threads) {
  r.title = "electric-only sanity (b = 0, V >= 0 radial, q = 0)";
  r.kind = FailureKind::Divergence;
  fock::FieldSpec spec;
  spec.B0 = 1.0;
  const double c = 1e-3;
  spec.V = {fock::RadialBump{{0, 0}, c, 3.0, 8}};
  const int N = 25;
  spectral::SplittingOptions opt;
  opt.N = N;
  opt.assembly.threads = threads;
  const auto grid = spectral::log_grid(1e-3, 1e-6, 4);
  const auto rep = spectral::splitting_counts(0, spec, grid, opt);

  // Toeplitz pipeline: V against the zero-mode Gram matrix
  const auto qgrid = fock::make_grid(spec, N);
  fock::AssemblyOptions aopt;
  aopt.threads = threads;
  const CMatrix G = fock::gram_matrix(spec, N, qgrid, aopt);
  const CMatrix M = fock::weighted_matrix(FuncPoly::atom(Field::V), spec, N, qgrid, {{Scalar::B0, spec.B0}}, aopt);
  const auto toe = spectral::toeplitz_result(spectral::gen_eigensolve(M, G), N);
  const auto n_plus = spectral::counting_report(toe.eigenvalues, grid);

  bool minus_zero = rep.ritz_counts && rep.oracle_counts;
  if (minus_zero)
    for (std::size_t i = 0; i < grid.size(); ++i)
      minus_zero = minus_zero && rep.ritz_counts->minus[i] == 0 && rep.oracle_counts->minus[i] == 0;
  add(r, "N_-(lambda) = 0 on the grid (Ritz and oracle)", minus_zero);

  const double floor = 10 * c * c / (2 * spec.B0);
  bool match = rep.ritz_counts && rep.oracle_counts;
  int compared = 0;
  std::ostringstream cs;
  for (std::size_t i = 0; match && i < grid.size(); ++i) {
    if (grid[i] < floor) continue;
    ++compared;
    const long t = n_plus.rows[i].count;
    cs << (compared > 1 ? " " : "") << num(grid[i], 3) << ":" << rep.ritz_counts->plus[i] << "/"
       << rep.oracle_counts->plus[i] << "/" << t;
    match = rep.ritz_counts->plus[i] == t && rep.oracle_counts->plus[i] == t;
  }
  add(r, "N_+(lambda) = n_+(lambda; V) for lambda >= 10 max V^2/(2B0) = " + num(floor, 3), match && compared > 0,
      "lambda:N+ Ritz/oracle/Toeplitz " + cs.str());
}

}  // namespace

CriterionResult run_criterion(int id, int threads) {
  CriterionResult r;
  r.id = id;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: exact_values(r); break;
      case 2: structure(r); break;
      case 3: scalar_identity(r); break;
      case 4: effective_potential(r); break;
      case 5: toeplitz_equivalence(r, threads); break;
      case 6: decay(r); break;
      case 7: counting(r); break;
      case 8: landau_levels(r, threads); break;
      case 9: splitting_cross(r, threads); break;
      case 10: electric_only(r, threads); break;
      default: throw ConfigError("criterion " + std::to_string(id) + " is not a library criterion");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    add(r, "completed without error", false, e.what());
    r.kind = FailureKind::Identity;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.time_limit > 0)
    // the measured time goes to the console only, so report files stay deterministic
    add(r, "runtime < " + num(r.time_limit, 3) + " s", r.seconds < r.time_limit);
  return r;
}

nlohmann::json to_json(const CriterionResult& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  nlohmann::json j{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"checks", checks}};
  if (!r.pass) j["failure"] = r.kind == FailureKind::Identity ? "identity" : "divergence";
  if (!r.data.is_null()) j["data"] = r.data;
  return j;
}

std::string format_result(const CriterionResult& r, bool with_checks) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << " (" << num(r.seconds, 3) << " s)";
  if (!r.pass) os << " [" << (r.kind == FailureKind::Identity ? "identity" : "divergence") << "]";
  os << "\n";
  if (with_checks)
    for (const auto& c : r.checks)
      os << "    " << (c.pass ? "ok  " : "FAIL") << " " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  return os.str();
}

}  // namespace ltbx::app
