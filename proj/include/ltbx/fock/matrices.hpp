#pragma once

#include "ltbx/algebra/func_poly.hpp"
#include "ltbx/fock/eval.hpp"
#include "ltbx/fock/field_spec.hpp"
#include "ltbx/fock/quadrature.hpp"
#include "ltbx/matrix.hpp"

namespace ltbx::fock {

struct AssemblyOptions {
  int threads = 1;
  /// Use the 1D radial path whenever it applies. Off forces the 2D grid.
  bool allow_radial = true;
};

/// ln g_n with g_n = pi n! (2/B0)^(n+1), the b = 0 norm of z^n e^(-Psi0).
double log_reference_norm(int n, double B0);

/// phi_0 .. phi_{N-1} at z, phi_n = z^n e^(-Psi) / sqrt(g_n).
void basis_values(const FieldSpec& spec, int N, point z, std::complex<double>* out);

/// Radial path is exact (diagonal) when every bump is centered at the origin
/// and every monomial of p carries zero angular charge.
bool radial_path_applies(const algebra::FuncPoly& p, const FieldSpec& spec);

/// G_mn = int conj(phi_m) phi_n. Throws NumericalError if the grid was built
/// for a smaller basis.
CMatrix gram_matrix(const FieldSpec& spec, int N, const QuadratureGrid& grid, const AssemblyOptions& opt = {});

/// M_mn = int F conj(phi_m) phi_n with F = eval(p). p must be real as a
/// polynomial (NumericalError otherwise).
CMatrix weighted_matrix(const algebra::FuncPoly& p, const FieldSpec& spec, int N, const QuadratureGrid& grid,
                        const ScalarBindings& bindings, const AssemblyOptions& opt = {});

}  // namespace ltbx::fock
