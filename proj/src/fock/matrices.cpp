#include "ltbx/fock/matrices.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <thread>

#include "ltbx/error.hpp"
#include "ltbx/kernels/dot.hpp"

namespace ltbx::fock {

namespace {

constexpr int kRingsPerBlock = 8;

void check_grid(const QuadratureGrid& grid, int N) {
  if (N < 1) throw ConfigError("basis size N must be at least 1");
  if (grid.N < N)
    throw NumericalError("quadrature grid resolves N <= " + std::to_string(grid.N) + ", requested N = " +
                         std::to_string(N));
}

// Runs body(block) for every block index; blocks are handed out statically so
// the per-block results do not depend on the thread count.
template <class F>
void for_blocks(int nblocks, int threads, F&& body) {
  threads = std::max(1, std::min(threads, nblocks));
  if (threads == 1) {
    for (int b = 0; b < nblocks; ++b) body(b);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int b = t; b < nblocks; b += threads) body(b);
    });
  for (auto& th : pool) th.join();
}

CMatrix assemble_radial(const CompiledPoly* F, const FieldSpec& spec, int N, const QuadratureGrid& grid) {
  const std::size_t nr = grid.r.size();
  std::vector<double> w(nr);
  std::vector<std::vector<double>> phi(N, std::vector<double>(nr));
  std::vector<std::complex<double>> vals(N);
  for (std::size_t j = 0; j < nr; ++j) {
    const point z(grid.r[j], 0.0);
    const double f = F ? (*F)(z).real() : 1.0;
    w[j] = 2.0 * std::numbers::pi * grid.w[j] * f;
    basis_values(spec, N, z, vals.data());
    for (int n = 0; n < N; ++n) phi[n][j] = vals[n].real();
  }
  CMatrix M(N);
  for (int n = 0; n < N; ++n) M(n, n) = kernels::weighted_dot(w.data(), phi[n].data(), phi[n].data(), nr);
  return M;
}

CMatrix assemble_2d(const algebra::FuncPoly* p, const FieldSpec& spec, const ScalarBindings* bindings, int N,
                    const QuadratureGrid& grid, int threads) {
  const int nt = grid.n_theta;
  const int nr = static_cast<int>(grid.r.size());
  const int nblocks = (nr + kRingsPerBlock - 1) / kRingsPerBlock;
  std::vector<CMatrix> partial(nblocks, CMatrix(N));
  std::vector<point> unit(nt);
  for (int t = 0; t < nt; ++t) unit[t] = std::polar(1.0, 2.0 * std::numbers::pi * t / nt);

  for_blocks(nblocks, threads, [&](int blk) {
    std::optional<CompiledPoly> F;
    if (p) F.emplace(*p, spec, *bindings);
    std::vector<double> w(nt), re(static_cast<std::size_t>(N) * nt), im(static_cast<std::size_t>(N) * nt);
    std::vector<std::complex<double>> vals(N);
    CMatrix& M = partial[blk];
    for (int j = blk * kRingsPerBlock; j < std::min(nr, (blk + 1) * kRingsPerBlock); ++j) {
      const double ring_w = grid.w[j] * 2.0 * std::numbers::pi / nt;
      for (int t = 0; t < nt; ++t) {
        const point z = grid.r[j] * unit[t];
        w[t] = ring_w * (F ? (*F)(z).real() : 1.0);
        basis_values(spec, N, z, vals.data());
        for (int n = 0; n < N; ++n) {
          re[static_cast<std::size_t>(n) * nt + t] = vals[n].real();
          im[static_cast<std::size_t>(n) * nt + t] = vals[n].imag();
        }
      }
      for (int m = 0; m < N; ++m)
        for (int n = m; n < N; ++n) {
          const auto s = kernels::weighted_cdot(w.data(), &re[static_cast<std::size_t>(m) * nt],
                                                &im[static_cast<std::size_t>(m) * nt],
                                                &re[static_cast<std::size_t>(n) * nt],
                                                &im[static_cast<std::size_t>(n) * nt], nt);
          M(m, n) += std::complex<double>(s.re, s.im);
        }
    }
  });

  CMatrix M(N);
  for (const auto& P : partial) M += P;
  for (int m = 0; m < N; ++m) {
    M(m, m) = M(m, m).real();
    for (int n = m + 1; n < N; ++n) M(n, m) = std::conj(M(m, n));
  }
  return M;
}

}  // namespace

double log_reference_norm(int n, double B0) {
  return std::log(std::numbers::pi) + std::lgamma(n + 1.0) + (n + 1) * std::log(2.0 / B0);
}

void basis_values(const FieldSpec& spec, int N, point z, std::complex<double>* out) {
  std::complex<double> v = std::exp(-spec.Psi(z) - 0.5 * log_reference_norm(0, spec.B0));
  for (int n = 0; n < N; ++n) {
    if (n > 0) v *= z * std::sqrt(spec.B0 / (2.0 * n));
    out[n] = v;
  }
}

bool radial_path_applies(const algebra::FuncPoly& p, const FieldSpec& spec) {
  return spec.is_radial() && p.is_rotation_invariant();
}

CMatrix gram_matrix(const FieldSpec& spec, int N, const QuadratureGrid& grid, const AssemblyOptions& opt) {
  check_grid(grid, N);
  if (opt.allow_radial && spec.is_radial()) return assemble_radial(nullptr, spec, N, grid);
  return assemble_2d(nullptr, spec, nullptr, N, grid, opt.threads);
}

CMatrix weighted_matrix(const algebra::FuncPoly& p, const FieldSpec& spec, int N, const QuadratureGrid& grid,
                        const ScalarBindings& bindings, const AssemblyOptions& opt) {
  check_grid(grid, N);
  if (!p.im().is_zero()) throw NumericalError("weighted_matrix needs a real-valued polynomial, got " + p.to_string());
  if (opt.allow_radial && radial_path_applies(p, spec)) {
    CompiledPoly F(p, spec, bindings);
    return assemble_radial(&F, spec, N, grid);
  }
  // compile once up front so binding and smoothness errors surface here
  CompiledPoly check(p, spec, bindings);
  return assemble_2d(&p, spec, &bindings, N, grid, opt.threads);
}

}  // namespace ltbx::fock
