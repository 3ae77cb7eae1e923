#pragma once

#include <vector>

#include "ltbx/matrix.hpp"

namespace ltbx::spectral {

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // columns, same order as values (empty unless requested)
};

/// Cyclic complex Jacobi. A rotation is skipped when |a_pq| is below
/// eps * sqrt(|a_pp a_qq|), which keeps small eigenvalues of graded matrices
/// accurate relative to their own size.
HermitianEigen jacobi_eigen(const CMatrix& A, bool want_vectors = false);

struct PencilEigen {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // N x N, columns 0..values.size()-1 used; deflated rows are zero
  std::vector<int> kept;       // basis indices surviving deflation
  int deflated = 0;
};

/// A v = lambda G v via G = L L* and Jacobi on L^-1 A L^-*. Cholesky pivots
/// below pivot_rel * trace(G)/N drop that basis vector; a pivot below minus
/// that threshold means G is indefinite (NumericalError).
PencilEigen gen_eigensolve(const CMatrix& A, const CMatrix& G, bool want_vectors = false, double pivot_rel = 1e-10);

}  // namespace ltbx::spectral
