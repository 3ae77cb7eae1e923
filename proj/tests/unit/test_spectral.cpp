#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ltbx/error.hpp"
#include "ltbx/fock/matrices.hpp"
#include "ltbx/fock/toeplitz_oracle.hpp"
#include "ltbx/spectral/diagnostics.hpp"
#include "ltbx/spectral/eigen.hpp"
#include "ltbx/spectral/landau.hpp"
#include "ltbx/spectral/pauli_oracle.hpp"
#include "ltbx/spectral/splitting.hpp"

using namespace ltbx;
using namespace ltbx::spectral;
using fock::FieldSpec;

namespace {

CMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CMatrix A(n);
  for (std::size_t i = 0; i < n; ++i) {
    A(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      A(i, j) = {g(rng), g(rng)};
      A(j, i) = std::conj(A(i, j));
    }
  }
  return A;
}

CMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CMatrix A(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = {g(rng), g(rng)};
  return A;
}

double fro(const CMatrix& A) {
  double s = 0;
  for (const auto& x : A.data()) s += std::norm(x);
  return std::sqrt(s);
}

FieldSpec bump_V(double c, double R, int k, double B0 = 1.0) {
  FieldSpec s;
  s.B0 = B0;
  s.V = {{{0, 0}, c, R, k}};
  return s;
}

}  // namespace

TEST_CASE("gen_eigensolve: small examples") {
  CMatrix A = CMatrix::diagonal({3, 1});
  auto e = gen_eigensolve(A, CMatrix::identity(2));
  CHECK(e.values == std::vector<double>{1, 3});
  std::mt19937_64 rng(1);
  CMatrix M = random_matrix(rng, 6);
  CMatrix G = M.adjoint() * M + CMatrix::identity(6);
  for (double v : gen_eigensolve(G, G).values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gen_eigensolve: residuals on random pencils") {
  std::mt19937_64 rng(2);
  for (std::size_t n : {1, 2, 5, 12, 30}) {
    CAPTURE(n);
    CMatrix A = random_hermitian(rng, n);
    CMatrix M = random_matrix(rng, n);
    CMatrix G = M.adjoint() * M + CMatrix::identity(n);
    auto e = gen_eigensolve(A, G, true);
    REQUIRE(e.values.size() == n);
    const double normA = fro(A);
    for (std::size_t c = 0; c < n; ++c) {
      double res = 0;
      for (std::size_t i = 0; i < n; ++i) {
        cplx r = 0;
        for (std::size_t j = 0; j < n; ++j) r += (A(i, j) - e.values[c] * G(i, j)) * e.vectors(j, c);
        res += std::norm(r);
      }
      double vn = 0;
      for (std::size_t i = 0; i < n; ++i) vn += std::norm(e.vectors(i, c));
      CHECK(std::sqrt(res / vn) <= 1e-10 * normA);
    }
  }
}

TEST_CASE("gen_eigensolve: deflation and indefinite G") {
  // third basis vector duplicates the first
  CMatrix G = CMatrix::identity(3);
  G(0, 2) = G(2, 0) = 1.0;
  G(2, 2) = 1.0;
  CMatrix A = CMatrix::diagonal({2, 5, 2});
  A(0, 2) = A(2, 0) = 2.0;
  auto e = gen_eigensolve(A, G);
  CHECK(e.deflated == 1);
  CHECK(e.kept == std::vector<int>{0, 1});
  CHECK(e.values == std::vector<double>{2, 5});

  CMatrix bad = CMatrix::diagonal({1, -1});
  CHECK_THROWS_AS(gen_eigensolve(CMatrix::identity(2), bad), NumericalError);
}

TEST_CASE("basis rescaling leaves the pencil spectrum unchanged") {
  std::mt19937_64 rng(5);
  const std::size_t n = 10;
  CMatrix A = random_hermitian(rng, n);
  CMatrix M = random_matrix(rng, n);
  CMatrix G = M.adjoint() * M + CMatrix::identity(n);
  std::uniform_real_distribution<double> u(0.01, 100);
  std::vector<double> d(n);
  for (auto& x : d) x = u(rng);
  CMatrix D = CMatrix::diagonal(d);
  auto e1 = gen_eigensolve(A, G).values;
  auto e2 = gen_eigensolve(D * A * D, D * G * D).values;
  for (std::size_t i = 0; i < n; ++i) CHECK(e2[i] == doctest::Approx(e1[i]).epsilon(1e-12));
}

TEST_CASE("Jacobi keeps small eigenvalues of graded matrices accurate") {
  CMatrix A = CMatrix::diagonal({1.0, 1e-8, 1e-16, 1e-24});
  A(0, 1) = A(1, 0) = cplx(1e-9, 1e-9);
  A(1, 2) = A(2, 1) = 1e-17;
  A(2, 3) = A(3, 2) = cplx(0, 1e-25);
  auto v = jacobi_eigen(A).values;
  // second order corrections: 2e-18/1 relative 2e-10 on the 1e-8 entry etc.
  CHECK(v[0] == doctest::Approx(1e-24 - 1e-50 / 1e-16).epsilon(1e-6));
  CHECK(v[1] == doctest::Approx(1e-16 - 1e-34 / 1e-8).epsilon(1e-6));
  CHECK(v[3] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("xi") {
  const double e = std::numbers::e;
  CHECK(xi(std::exp(-e * e)) == doctest::Approx(e * e / 4));
  CHECK(xi(std::exp(-e * e * e)) == doctest::Approx(e * e * e / 6));
  double prev = std::numeric_limits<double>::infinity();
  for (double l = 1e-300; l < std::exp(-e); l *= 10) {
    CHECK(xi(l) < prev);
    prev = xi(l);
  }
  CHECK_THROWS_AS(xi(0.1), ConfigError);
  CHECK_THROWS_AS(xi(0.0), ConfigError);
}

TEST_CASE("decay diagnostic") {
  const double x = 1.7;
  std::vector<double> logs;
  for (int n = 1; n <= 30; ++n) logs.push_back(n * std::log(x) - std::lgamma(n + 1.0));
  for (const auto& row : decay_diagnostic(logs).rows) CHECK(row.s == doctest::Approx(x).epsilon(1e-12));

  // disk oracle, x = B0 R^2/2 = 1
  const auto seq = fock::radial_toeplitz_sequence(fock::RadialProfile::disk(1.0), 2.0, 101);
  auto rep = decay_diagnostic(seq);
  attach_disk_reference(rep, 2.0, 1.0);
  CHECK(*rep.reference_limit == 1.0);
  CHECK(*rep.capacity_bound == 1.0);
  CHECK(std::abs(rep.rows[39].s - 1.0) < 0.05);
  CHECK(std::isnan(rep.rows[0].s_index0));

  // floor truncation
  SpectralResult r;
  r.eigenvalues = {1, 0.5, 1e-13, 1e-14};
  r.trust_floor = 1e-12;
  r.ordering = Ordering::DescendingAbs;
  CHECK(decay_diagnostic(r).rows.size() == 2);
  CHECK(decay_diagnostic(r, false).rows.size() == 4);
}

TEST_CASE("counting") {
  const auto disk = fock::RadialProfile::disk(1.0);
  auto rep = oracle_counting(disk, 2.0, {1e-12, 0.7, 0.5});
  CHECK(rep.rows[0].count == 14);
  CHECK(rep.rows[1].count == 0);
  CHECK(rep.rows[2].count == 1);
  const auto grid = log_grid(1e-3, 1e-100, 2);
  auto mono = oracle_counting(disk, 2.0, grid);
  for (std::size_t i = 1; i < mono.rows.size(); ++i) CHECK(mono.rows[i].count >= mono.rows[i - 1].count);
  // strict inequality
  auto strict = counting_report(std::vector<double>{1.0, 0.5}, {0.5});
  CHECK(strict.rows[0].count == 1);
  CHECK(std::isnan(counting_row(0.5, 1).xi));
  CHECK_THROWS_AS(counting_report(std::vector<double>{1.0}, {0.0}), ConfigError);
}

TEST_CASE("landau_form_matrices recover the Landau levels at b = V = 0") {
  FieldSpec s;
  s.B0 = 1.3;
  const int N = 12;
  const auto grid = fock::make_grid(s, N);
  auto m0 = landau_form_matrices(0, s, N, grid);
  CHECK(m0.A.max_abs() == 0.0);
  CHECK((m0.Bm - CMatrix::identity(N)).max_abs() < 1e-10);
  for (int q = 1; q <= 3; ++q) {
    CAPTURE(q);
    for (double v : ritz_values(landau_form_matrices(q, s, N, grid)))
      CHECK(v == doctest::Approx(landau_level(q, s.B0)).epsilon(1e-10));
  }
}

TEST_CASE("q = 0 Ritz values are the Toeplitz eigenvalues of V") {
  const FieldSpec s = bump_V(0.4, 1.2, 8, 1.5);
  const int N = 15;
  const auto grid = fock::make_grid(s, N);
  auto ritz = ritz_values(landau_form_matrices(0, s, N, grid));
  std::sort(ritz.begin(), ritz.end(), std::greater<>());
  fock::RadialProfile W{0.0, s.V};
  auto oracle = fock::radial_toeplitz_sequence(W, s.B0, N);
  for (int n = 0; n < 8; ++n) CHECK(ritz[n] == doctest::Approx(oracle[n].value()).epsilon(1e-8));
}

TEST_CASE("Ritz values rise monotonically with N (q = 0, b = 0, V >= 0)") {
  FieldSpec s;
  s.B0 = 1.0;
  s.V = {{{0.4, 0.3}, 0.5, 1.0, 8}};
  std::vector<double> prev;
  for (int N : {4, 8, 12}) {
    const auto grid = fock::make_grid(s, N);
    auto r = ritz_values(landau_form_matrices(0, s, N, grid));
    std::sort(r.begin(), r.end(), std::greater<>());
    for (std::size_t i = 0; i < prev.size(); ++i) CHECK(r[i] >= prev[i] - 1e-13);
    prev = r;
  }
}

TEST_CASE("Gram matrices of perturbed specs: Cholesky and conditioning") {
  FieldSpec s;
  s.B0 = 1.0;
  s.b = {{{0.2, 0.1}, 0.5, 1.0, 8}, {{-0.5, 0.0}, 0.3, 0.7, 8}};
  const int N = 40;
  const auto grid = fock::make_grid(s, N);
  const CMatrix G = fock::gram_matrix(s, N, grid);
  auto e = gen_eigensolve(G, CMatrix::identity(N));
  CHECK(e.deflated == 0);
  CHECK(e.values.front() > 0);
  CHECK(e.values.back() / e.values.front() < 1e6);
  CHECK_NOTHROW(gen_eigensolve(CMatrix::identity(N), G));
}

TEST_CASE("radial Pauli oracle: Landau spectrum per sector") {
  FieldSpec s;
  s.B0 = 1.0;
  for (int m : {0, 1, 4}) {
    auto low = radial_pauli_oracle(s, m, {-1.0, 1.0});
    REQUIRE(low.size() == 1);
    CHECK(std::abs(low[0]) < 1e-6);
    auto next = radial_pauli_oracle(s, m, {1.0, 3.0});
    REQUIRE(next.size() == 1);
    CHECK(std::abs(next[0] - 2.0) < 1e-6);
  }
  // m = -1 first appears at Lambda_1
  CHECK(radial_pauli_oracle(s, -1, {-1.0, 1.0}).empty());
  CHECK_THROWS_AS(radial_pauli_oracle(s, 0, {0.5, 1.5}), ConfigError);
  FieldSpec off = s;
  off.V = {{{0.5, 0.0}, 0.1, 1.0, 8}};
  CHECK_THROWS_AS(radial_pauli_oracle(off, 0, {-1.0, 1.0}), ConfigError);
}

TEST_CASE("radial Pauli oracle vs Toeplitz oracle for a weak V") {
  const FieldSpec s = bump_V(0.01, 1.0, 8);
  fock::RadialProfile W{0.0, s.V};
  for (int n = 0; n < 5; ++n) {
    auto E = radial_pauli_oracle(s, n, {-1.0, 1.0});
    REQUIRE(E.size() == 1);
    const double lam = radial_toeplitz_oracle(W, s.B0, n).value();
    CHECK(std::abs(E[0] - lam) / lam <= 0.05);
  }
  // -V pushes the eigenvalues below Lambda_0
  const FieldSpec neg = bump_V(-0.01, 1.0, 8);
  for (int n = 0; n < 3; ++n) CHECK(radial_pauli_oracle(neg, n, {-1.0, 1.0}).at(0) < 0);
}

TEST_CASE("electric-only splitting at q = 0") {
  const FieldSpec s = bump_V(0.05, 1.0, 8);
  const auto grid = log_grid(1e-2, 1e-6, 2);
  SplittingOptions opt;
  opt.N = 20;
  auto rep = splitting_counts(0, s, grid, opt);
  REQUIRE(rep.oracle_counts);
  REQUIRE(rep.ritz_counts);
  for (long c : rep.oracle_counts->minus) CHECK(c == 0);
  for (long c : rep.ritz_counts->minus) CHECK(c == 0);
  // N_+ equals the Toeplitz count above 10 * max V^2 / (2 B0)
  const double floor = 10 * 0.05 * 0.05 / 2;
  auto toe = oracle_counting({0.0, s.V}, s.B0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < floor) continue;
    CHECK(rep.ritz_counts->plus[i] == toe.rows[i].count);
    CHECK(rep.oracle_counts->plus[i] == toe.rows[i].count);
  }
  CHECK(rep.potentials.empty());
}

TEST_CASE("splitting counts are monotone and W+- is reported for q >= 1") {
  FieldSpec s;
  s.B0 = 1.0;
  s.b = {{{0, 0}, 0.3, 1.0, 12}};
  const auto grid = log_grid(1e-1, 1e-6, 4);
  SplittingOptions opt;
  opt.N = 15;
  auto rep = splitting_counts(1, s, grid, opt);
  for (const auto* c : {&*rep.ritz_counts, &*rep.oracle_counts})
    for (std::size_t i = 1; i < grid.size(); ++i) {
      CHECK(c->plus[i] >= c->plus[i - 1]);
      CHECK(c->minus[i] >= c->minus[i - 1]);
    }
  REQUIRE(rep.potentials.size() == 2);
  CHECK(rep.potentials[0].derived.min <= rep.potentials[0].derived.max);
}
