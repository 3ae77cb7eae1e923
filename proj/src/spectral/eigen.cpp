#include "ltbx/spectral/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ltbx/error.hpp"

namespace ltbx::spectral {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

HermitianEigen jacobi_eigen(const CMatrix& A0, bool want_vectors) {
  const std::size_t n = A0.size();
  CMatrix A = A0;
  for (std::size_t i = 0; i < n; ++i) {
    A(i, i) = A(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (A(i, j) + std::conj(A(j, i)));
      A(i, j) = avg;
      A(j, i) = std::conj(avg);
    }
  }
  CMatrix V = want_vectors ? CMatrix::identity(n) : CMatrix();

  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = std::abs(A(p, q));
        if (apq == 0.0) continue;
        const double app = A(p, p).real(), aqq = A(q, q).real();
        if (apq <= kEps * std::sqrt(std::abs(app * aqq)) || apq < std::numeric_limits<double>::min()) {
          A(p, q) = A(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const cplx e = A(p, q) / apq;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
        // U = diag(1, conj(e)) [[c, s], [-s, c]]
        const cplx upp = c, upq = s, uqp = -s * std::conj(e), uqq = c * std::conj(e);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = A(k, p), akq = A(k, q);
          A(k, p) = akp * upp + akq * uqp;
          A(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = A(p, k), aqk = A(q, k);
          A(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          A(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        A(p, q) = A(q, p) = 0.0;
        A(p, p) = A(p, p).real();
        A(q, q) = A(q, q).real();
        if (want_vectors)
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = V(k, p), vkq = V(k, q);
            V(k, p) = vkp * upp + vkq * uqp;
            V(k, q) = vkp * upq + vkq * uqq;
          }
      }
    if (!rotated) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return A(a, a).real() < A(b, b).real(); });
  HermitianEigen out;
  for (auto i : order) out.values.push_back(A(i, i).real());
  if (want_vectors) {
    out.vectors = CMatrix(n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t k = 0; k < n; ++k) out.vectors(k, c) = V(k, order[c]);
  }
  return out;
}

PencilEigen gen_eigensolve(const CMatrix& A, const CMatrix& G, bool want_vectors, double pivot_rel) {
  const std::size_t n = G.size();
  if (A.size() != n) throw ConfigError("gen_eigensolve: A and G differ in size");
  PencilEigen out;
  if (n == 0) return out;
  double trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace += G(i, i).real();
  const double thr = pivot_rel * trace / static_cast<double>(n);

  // Cholesky restricted to the kept indices; L is stored in kept-index coordinates.
  std::vector<int> kept;
  std::vector<std::vector<cplx>> L;  // L[a][b], b <= a
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<cplx> row(kept.size() + 1);
    for (std::size_t b = 0; b < kept.size(); ++b) {
      cplx s = G(j, kept[b]);
      for (std::size_t c = 0; c < b; ++c) s -= row[c] * std::conj(L[b][c]);
      row[b] = s / L[b][b];
    }
    double d = G(j, j).real();
    for (std::size_t b = 0; b < kept.size(); ++b) d -= std::norm(row[b]);
    if (d < -thr) throw NumericalError("gen_eigensolve: G is indefinite (pivot " + std::to_string(d) + ")");
    if (d <= thr) {
      ++out.deflated;
      continue;
    }
    row.back() = std::sqrt(d);
    kept.push_back(static_cast<int>(j));
    L.push_back(std::move(row));
  }
  const std::size_t m = kept.size();

  // X = L^-1 A_KK, then C = L^-1 X^*  (= L^-1 A L^-*, Hermitian)
  auto lower_solve = [&](CMatrix& B) {
    for (std::size_t col = 0; col < m; ++col)
      for (std::size_t a = 0; a < m; ++a) {
        cplx s = B(a, col);
        for (std::size_t b = 0; b < a; ++b) s -= L[a][b] * B(b, col);
        B(a, col) = s / L[a][a];
      }
  };
  CMatrix X(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) X(a, b) = A(kept[a], kept[b]);
  lower_solve(X);
  CMatrix C = X.adjoint();
  lower_solve(C);

  HermitianEigen he = jacobi_eigen(C, want_vectors);
  out.values = he.values;
  out.kept = kept;
  if (want_vectors) {
    // v = L^-* y, scattered back to the full index set
    out.vectors = CMatrix(n);
    for (std::size_t col = 0; col < m; ++col) {
      std::vector<cplx> y(m);
      for (std::size_t a = 0; a < m; ++a) y[a] = he.vectors(a, col);
      for (std::size_t a = m; a-- > 0;) {
        cplx s = y[a];
        for (std::size_t b = a + 1; b < m; ++b) s -= std::conj(L[b][a]) * y[b];
        y[a] = s / L[a][a];
      }
      for (std::size_t a = 0; a < m; ++a) out.vectors(kept[a], col) = y[a];
    }
  }
  return out;
}

}  // namespace ltbx::spectral
