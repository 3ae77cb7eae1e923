#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "ltbx/algebra/landau_forms.hpp"
#include "ltbx/error.hpp"
#include "ltbx/fock/eval.hpp"
#include "ltbx/fock/matrices.hpp"
#include "ltbx/fock/matrix_io.hpp"
#include "ltbx/fock/quadrature.hpp"
#include "ltbx/fock/toeplitz_oracle.hpp"
#include "ltbx/kernels/dot.hpp"
#include "random_exprs.hpp"

using namespace ltbx;
using namespace ltbx::fock;
using algebra::Field;
using algebra::FuncPoly;
using algebra::Scalar;

namespace {

FieldSpec two_bump_spec() {
  FieldSpec s;
  s.B0 = 1.5;
  s.b = {{{0.3, -0.2}, 0.5, 1.0, 8}, {{-0.7, 0.4}, -0.25, 0.8, 9}};
  s.V = {{{0.1, 0.5}, 0.4, 1.2, 10}};
  return s;
}

FieldSpec radial_spec() {
  FieldSpec s;
  s.B0 = 1.0;
  s.b = {{{0, 0}, 0.5, 1.0, 8}};
  s.V = {{{0, 0}, 0.3, 1.5, 8}};
  return s;
}

// fourth-order five-point stencil along each axis
double lap_fd(const std::function<double(point)>& f, point z, double h) {
  double s = -60 * f(z);
  for (point e : {point(h, 0), point(0, h)})
    s += 16 * (f(z + e) + f(z - e)) - (f(z + 2.0 * e) + f(z - 2.0 * e));
  return s / (12 * h * h);
}

// Wirtinger derivatives by central differences
std::complex<double> d_fd(const std::function<std::complex<double>(point)>& f, point z, double h) {
  const auto fx = (f(z + h) - f(z - h)) / (2 * h);
  const auto fy = (f(z + point(0, h)) - f(z - point(0, h))) / (2 * h);
  return 0.5 * (fx - std::complex<double>(0, 1) * fy);
}
std::complex<double> dbar_fd(const std::function<std::complex<double>(point)>& f, point z, double h) {
  const auto fx = (f(z + h) - f(z - h)) / (2 * h);
  const auto fy = (f(z + point(0, h)) - f(z - point(0, h))) / (2 * h);
  return 0.5 * (fx + std::complex<double>(0, 1) * fy);
}

}  // namespace

TEST_CASE("flux") {
  FieldSpec s;
  s.b = {{{0, 0}, 1.0, 1.0, 2}};
  CHECK(flux(s) == doctest::Approx(1.0 / 6));
  CHECK(flux(FieldSpec{}) == 0.0);
  s.b.push_back({{0, 0}, -1.0, 1.0, 2});
  CHECK(flux(s) == 0.0);
  // quadrature of b over the plane / 2 pi
  FieldSpec t = two_bump_spec();
  auto g = make_grid(t, 1);
  double integral = 0;
  for (std::size_t j = 0; j < g.r.size(); ++j)
    for (int k = 0; k < 400; ++k) integral += g.w[j] * (2 * std::numbers::pi / 400) * t.b_value(std::polar(g.r[j], 2 * std::numbers::pi * k / 400));
  CHECK(integral / (2 * std::numbers::pi) == doctest::Approx(flux(t)).epsilon(1e-6));
}

TEST_CASE("scalar potential: exterior log law, continuity, C1 matching") {
  RadialBump w{{0, 0}, 0.7, 1.3, 5};
  const double sigma = w.flux();
  for (double r : {1.3, 1.5, 4.0, 100.0}) CHECK(w.psi(r) == doctest::Approx(sigma * std::log(r)).epsilon(1e-15));
  const double R = w.R;
  CHECK(std::abs(w.psi(std::nextafter(R, 0.0)) - sigma * std::log(R)) < 1e-12);
  CHECK(std::abs(w.dpsi(std::nextafter(R, 0.0)) - sigma / R) < 1e-12);
  FieldSpec empty;
  CHECK(scalar_potential(empty, {0.3, 0.2}) == 0.0);
  // psi' against a finite difference of psi
  for (double r : {0.1, 0.6, 1.1}) CHECK(w.dpsi(r) == doctest::Approx((w.psi(r + 1e-6) - w.psi(r - 1e-6)) / 2e-6).epsilon(1e-7));
}

TEST_CASE("Lap psi = b at random points (finite differences)") {
  const FieldSpec s = two_bump_spec();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  int checked = 0;
  while (checked < 20) {
    const point z(u(rng), u(rng));
    const double bz = s.b_value(z);
    if (std::abs(bz) < 1e-3) continue;
    const double lap = lap_fd([&](point p) { return scalar_potential(s, p); }, z, 1e-3);
    CHECK(lap == doctest::Approx(bz).epsilon(1e-6));
    ++checked;
  }
}

TEST_CASE("closed-form Wirtinger derivatives of a bump") {
  RadialBump w{{0.2, -0.1}, 0.8, 1.1, 9};
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int i = 0; i < 10; ++i) {
    const point z = w.center + point(u(rng), u(rng));
    for (int d = 0; d <= 2; ++d)
      for (int e = 0; e <= 2; ++e) {
        auto f = [&](point p) { return w.derivative(d, e, p); };
        const auto dd = w.derivative(d + 1, e, z), db = w.derivative(d, e + 1, z);
        CHECK(std::abs(d_fd(f, z, 1e-5) - dd) < 1e-7 * (1 + std::abs(dd)));
        CHECK(std::abs(dbar_fd(f, z, 1e-5) - db) < 1e-7 * (1 + std::abs(db)));
      }
    // Lap = 4 d dbar
    CHECK(lap_fd([&](point p) { return w.value(p); }, z, 1e-3) ==
          doctest::Approx(4 * w.derivative(1, 1, z).real()).epsilon(1e-5));
  }
}

TEST_CASE("eval_funcpoly examples") {
  FieldSpec s;
  s.B0 = 1.7;
  s.b = {{{0, 0}, 0.6, 1.0, 5}};
  const FuncPoly b = FuncPoly::atom(Field::b);
  ScalarBindings bind{{Scalar::B0, s.B0}};
  CHECK(eval_funcpoly(b * algebra::GaussianRational(2), s, {2.0, 0.0}, bind) == std::complex<double>(0.0));
  // Z_2 at the center: 8 b0^2 + 16 B0 b0 + 2 Lap b(0), Lap b(0) = 4 g'(0) = -4ck/R^2
  const double b0 = 0.6, lap0 = -4 * 0.6 * 5;
  CHECK(eval_funcpoly(FuncPoly::laplacian(Field::b), s, 0.0, bind).real() == doctest::Approx(lap0));
  const auto z2 = eval_funcpoly(algebra::z_poly(2), s, 0.0, bind);
  CHECK(z2.real() == doctest::Approx(8 * b0 * b0 + 16 * s.B0 * b0 + 2 * lap0));
  CHECK(z2.imag() == 0.0);
}

TEST_CASE("evaluation commutes with conjugation") {
  const FieldSpec s = two_bump_spec();
  ScalarBindings bind;
  for (Scalar x : algebra::kAllScalars) bind[x] = 0.37 + static_cast<int>(x);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 20; ++i) {
    FuncPoly p = ltbx::testing::random_funcpoly(rng);
    if (p.contains_field(Field::U) || p.max_order(Field::b) > 7 || p.max_order(Field::V) > 7) continue;
    const point z(u(rng), u(rng));
    const auto a = eval_funcpoly(p.conj(), s, z, bind);
    const auto c = std::conj(eval_funcpoly(p, s, z, bind));
    CHECK(std::abs(a - c) <= 1e-12 * (1 + std::abs(c)));
  }
}

TEST_CASE("X_1[b^2] against finite differences") {
  const FieldSpec s = two_bump_spec();
  const FuncPoly b = FuncPoly::atom(Field::b);
  const FuncPoly sym = algebra::apply(algebra::x_op(1), b * b);
  ScalarBindings bind{{Scalar::B0, s.B0}};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int i = 0; i < 10; ++i) {
    const point z(u(rng), u(rng));
    auto bsq = [&](point p) { return s.b_value(p) * s.b_value(p); };
    const double bz = s.b_value(z);
    const double numeric = 2 * (s.B0 + bz) * bz * bz + lap_fd(bsq, z, 1e-3);
    const auto exact = eval_funcpoly(sym, s, z, bind);
    CHECK(exact.real() == doctest::Approx(numeric).epsilon(1e-6));
    CHECK(std::abs(exact.imag()) < 1e-12);
  }
}

TEST_CASE("evaluation errors") {
  FieldSpec s;
  s.b = {{{0, 0}, 1.0, 1.0, 3}};
  CHECK_THROWS_AS(eval_funcpoly(FuncPoly::scalar(Scalar::mu), s, 0.0, {}), ConfigError);
  CHECK_THROWS_AS(eval_funcpoly(FuncPoly::atom(Field::b, 2, 1), s, 0.0, {}), NumericalError);
  CHECK_NOTHROW(eval_funcpoly(FuncPoly::atom(Field::b, 1, 1), s, 0.0, {}));
  CHECK_THROWS_AS(eval_funcpoly(FuncPoly::atom(Field::U), s, 0.0, {}), ConfigError);
}

TEST_CASE("Gauss-Legendre rule") {
  const auto& g = gauss_legendre(7);
  for (int p = 0; p <= 13; ++p) {
    double s = 0;
    for (int i = 0; i < 7; ++i) s += g.w[i] * std::pow(g.x[i], p);
    CHECK(s == doctest::Approx(p % 2 ? 0.0 : 2.0 / (p + 1)).epsilon(1e-14));
  }
}

TEST_CASE("Gram matrix at b = 0 is the identity") {
  FieldSpec s;
  s.B0 = 2.0;
  const int N = 20;
  const auto grid = make_grid(s, N);
  for (bool radial : {true, false}) {
    const CMatrix G = gram_matrix(s, N, grid, {1, radial});
    CHECK((G - CMatrix::identity(N)).max_abs() < 1e-10);
  }
}

TEST_CASE("radial spec: fast path exactly diagonal, 2D path nearly so, both agree") {
  const FieldSpec s = radial_spec();
  const int N = 12;
  const auto grid = make_grid(s, N);
  const CMatrix fast = gram_matrix(s, N, grid);
  const CMatrix full = gram_matrix(s, N, grid, {1, false});
  CHECK(fast.max_offdiag_abs() == 0.0);
  CHECK(full.max_offdiag_abs() < 1e-12);
  CHECK((fast - full).max_abs() < 1e-10);

  const FuncPoly V = FuncPoly::atom(Field::V);
  const FuncPoly Z2 = algebra::z_poly(2);
  ScalarBindings bind{{Scalar::B0, s.B0}};
  for (const FuncPoly& p : {V, Z2}) {
    const CMatrix a = weighted_matrix(p, s, N, grid, bind);
    const CMatrix c = weighted_matrix(p, s, N, grid, bind, {1, false});
    CHECK(a.max_offdiag_abs() == 0.0);
    CHECK((a - c).max_abs() < 1e-10);
  }
}

TEST_CASE("weighted matrix: p = 1 is the Gram matrix; linearity") {
  const FieldSpec s = two_bump_spec();
  const int N = 8;
  const auto grid = make_grid(s, N);
  ScalarBindings bind{{Scalar::B0, s.B0}};
  CHECK((weighted_matrix(FuncPoly(1), s, N, grid, bind) - gram_matrix(s, N, grid)).max_abs() < 1e-14);
  const FuncPoly p1 = FuncPoly::atom(Field::V), p2 = FuncPoly::atom(Field::b).pow(2) * algebra::GaussianRational(3);
  const CMatrix lhs = weighted_matrix(p1 + p2, s, N, grid, bind);
  const CMatrix rhs = weighted_matrix(p1, s, N, grid, bind) + weighted_matrix(p2, s, N, grid, bind);
  CHECK((lhs - rhs).max_abs() < 1e-12);
  CHECK(lhs.hermitian_defect() == 0.0);
}

TEST_CASE("weighted matrix rejects non-real polynomials") {
  const FieldSpec s = radial_spec();
  const auto grid = make_grid(s, 4);
  CHECK_THROWS_AS(weighted_matrix(FuncPoly::atom(Field::b, 0, 1), s, 4, grid, {}), NumericalError);
  CHECK_THROWS_AS(gram_matrix(s, 5, grid), NumericalError);
}

TEST_CASE("quadrature convergence under refinement") {
  for (const FieldSpec& s : {radial_spec(), two_bump_spec()}) {
    const int N = 10;
    GridOptions coarse, fine;
    fine.nodes_per_panel = 2 * coarse.nodes_per_panel;
    fine.n_theta = 2 * (4 * N + 16);
    const auto g1 = make_grid(s, N, coarse), g2 = make_grid(s, N, fine);
    ScalarBindings bind{{Scalar::B0, s.B0}};
    const FuncPoly z2 = algebra::z_poly(2);
    for (bool radial : {true, false}) {
      CHECK((gram_matrix(s, N, g1, {1, radial}) - gram_matrix(s, N, g2, {1, radial})).max_abs() < 1e-10);
      CHECK((weighted_matrix(z2, s, N, g1, bind, {1, radial}) - weighted_matrix(z2, s, N, g2, bind, {1, radial}))
                .max_abs() < 1e-10);
    }
  }
}

TEST_CASE("assembly is bit-identical across thread counts") {
  const FieldSpec s = two_bump_spec();
  const int N = 6;
  const auto grid = make_grid(s, N);
  ScalarBindings bind{{Scalar::B0, s.B0}};
  const CMatrix a = weighted_matrix(algebra::z_poly(1), s, N, grid, bind, {1, true});
  const CMatrix b = weighted_matrix(algebra::z_poly(1), s, N, grid, bind, {3, true});
  CHECK(a.data() == b.data());
}

TEST_CASE("scalar and AVX2 assembly agree") {
  const FieldSpec s = two_bump_spec();
  const int N = 8;
  const auto grid = make_grid(s, N);
  kernels::force_isa(kernels::Isa::Scalar);
  const CMatrix a = gram_matrix(s, N, grid);
  kernels::force_isa(kernels::Isa::Avx2);
  const CMatrix b = gram_matrix(s, N, grid);
  kernels::reset_isa();
  CHECK((a - b).max_abs() < 1e-13);
}

TEST_CASE("Toeplitz oracle") {
  const auto disk = RadialProfile::disk(1.0);
  // B0 R^2/2 = 1
  CHECK(radial_toeplitz_oracle(disk, 2.0, 0).value() == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-15));
  const double ref[][2] = {{0, -0.45867514538708189102},
                           {1, -1.3308932682040545336},
                           {10, -18.415915478317809958},
                           {50, -153.3901817421054667},
                           {200, -869.53032943304084829}};
  for (const auto& [n, lg] : ref) {
    const LogValue v = radial_toeplitz_oracle(disk, 2.0, static_cast<int>(n));
    CHECK(v.sign == 1);
    CHECK(std::abs(v.log_abs - lg) < 1e-10);
  }
  RadialProfile one;
  one.constant = 1.0;
  for (int n : {0, 5, 100}) CHECK(radial_toeplitz_oracle(one, 1.3, n).value() == 1.0);

  RadialProfile bump{0.0, {{{0, 0}, 0.7, 1.3, 3}}};
  CHECK(radial_toeplitz_oracle(bump, 1.7, 0).value() == doctest::Approx(0.19345531999457867838).epsilon(1e-13));
  CHECK(radial_toeplitz_oracle(bump, 1.7, 3).value() == doctest::Approx(0.0017804261996540260256).epsilon(1e-13));
  CHECK(radial_toeplitz_oracle(bump, 1.7, 20).value() == doctest::Approx(4.0953332643158570309e-21).epsilon(1e-12));
  // large x stays finite
  CHECK(std::isfinite(radial_toeplitz_oracle(RadialProfile::disk(40.0), 2.0, 3).log_abs));
  CHECK(radial_toeplitz_oracle(RadialProfile::disk(40.0), 2.0, 3).value() == doctest::Approx(1.0));
}

TEST_CASE("weighted matrix of a radial bump matches the Toeplitz oracle at b = 0") {
  FieldSpec s;
  s.B0 = 2.0;
  s.V = {{{0, 0}, 1.0, 1.0, 4}};
  const int N = 30;
  const auto grid = make_grid(s, N);
  const CMatrix M = weighted_matrix(FuncPoly::atom(Field::V), s, N, grid, {});
  RadialProfile W{0.0, s.V};
  for (int n = 0; n < N; ++n) {
    const double m = M(n, n).real();
    if (m < 1e-12) break;
    CAPTURE(n);
    CHECK(m == doctest::Approx(radial_toeplitz_oracle(W, s.B0, n).value()).epsilon(1e-8));
  }
}

TEST_CASE("LTBX binary and CSV matrix output") {
  CMatrix M(2);
  M(0, 0) = 1.5;
  M(0, 1) = {0.25, -1.0};
  M(1, 0) = {0.25, 1.0};
  M(1, 1) = -2.0;
  std::stringstream ss;
  write_matrix_ltbx(ss, M);
  const std::string bytes = ss.str();
  REQUIRE(bytes.size() == 16 + 4 * 16);
  CHECK(bytes.substr(12, 4) == std::string(4, '\0'));
  CHECK(bytes.substr(0, 4) == "LTBX");
  CHECK(static_cast<unsigned char>(bytes[4]) == 2);
  CHECK(static_cast<unsigned char>(bytes[8]) == 1);
  CHECK(read_matrix_ltbx(ss).data() == M.data());

  std::stringstream real;
  write_matrix_ltbx(real, CMatrix::identity(3));
  CHECK(real.str().size() == 16 + 9 * 8);
  CHECK(read_matrix_ltbx(real).data() == CMatrix::identity(3).data());

  std::ostringstream csv;
  write_matrix_csv(csv, M);
  CHECK(csv.str().rfind("row,col,re,im\n0,0,1.5,0\n0,1,0.25,-1\n", 0) == 0);
}

TEST_CASE("field spec JSON") {
  auto j = nlohmann::json::parse(R"({"B0": 1.0, "b": [{"center": [0,0], "c": 0.5, "R": 1.0, "k": 8}], "V": []})");
  FieldSpec s = field_spec_from_json(j);
  CHECK(s.B0 == 1.0);
  CHECK(s.b.size() == 1);
  CHECK(s.b[0].k == 8);
  CHECK(field_spec_from_json(to_json(s)).b[0].c == 0.5);
  j["b"][0]["sigma"] = 1;
  CHECK_THROWS_WITH_AS(field_spec_from_json(j), "field.b[0].sigma: unknown key", ConfigError);
  CHECK_THROWS_AS(field_spec_from_json(nlohmann::json::parse(R"({"B0": -1})")), ConfigError);
  CHECK_THROWS_AS(field_spec_from_json(nlohmann::json::parse(R"({"B0": 1, "V": [{"c": 1, "R": 1, "k": 0}]})")),
                  ConfigError);
}
