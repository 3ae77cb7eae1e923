#pragma once

#include <string>

#include "ltbx/algebra/func_poly.hpp"
#include "ltbx/algebra/lin_diff_op.hpp"
#include "ltbx/algebra/op_expr.hpp"

// Quadratic forms of the perturbed Landau Hamiltonian restricted to the
// approximate Landau subspaces Qbar^q H0, reduced to functions on the zero
// modes H0 by normal ordering.

namespace ltbx::algebra {

enum class Sign { Plus, Minus };

char sign_char(Sign s);

/// C_q = q! (2 B0)^q.
FuncPoly landau_constant(int q);

/// Q^a Qbar^b etc. as operator expressions.
OpExpr Q_pow(int n);
OpExpr Qbar_pow(int n);

/// Z_q[b] = vacuum(Q^q Qbar^q) - C_q. Requires q >= 1. Throws IdentityError
/// if the field-free part of the vacuum form is not exactly C_q.
FuncPoly z_poly(int q);

/// X_q[b, .]: vacuum(Q^q U Qbar^q) as a differential operator in U. q >= 1.
LinDiffOp x_op(int q);

/// Y_q[b, .]: vacuum(Q^(q+1) U Qbar^q) as a differential operator in U.
/// Accepts q = 0 as an extension beyond the stated range q >= 1.
LinDiffOp y_op(int q);

/// Lambda = 2 q B0, s = Lambda +- B0, mu = (Lambda +- lambda + s)/2,
/// tau = (B0 - lambda)/2. Leaves a polynomial in lambda and B0.
FuncPoly substitute_level_scalars(const FuncPoly& p, int q, Sign sign);

/// Effective potential W_+- assembled from Z, X, Y exactly as printed:
///   -(Lambda +- lambda + 2B0)(s + 2B0) Z_q - Z_{q+2} + 2(mu + 3B0) Z_{q+1}
///   - X_q[4(2B - b + mu) b - (4B - 2mu + V) V] - 2 X_{q+1}[V - 3b]
///   - 4 Im Y_q[dV - 2 db],   B = B0 + b.
/// Scalars stay symbolic unless `substitute` is set.
FuncPoly effective_potential(int q, Sign sign, bool substitute = false);

struct DerivedPotential {
  FuncPoly constant;   ///< field-free coefficient of ||v||^2 (scalars symbolic)
  FuncPoly potential;  ///< remaining terms; equals -W when the printed formula holds
};

/// First-principles expansion of ||(P_- + V - mu) u||^2 - tau^2 ||u||^2 with
/// u = Qbar^q v, P_- = Qbar Q:
///   vacuum(Q^q (Qbar Q + V - mu)^2 Qbar^q) - tau^2 vacuum(Q^q Qbar^q).
/// The sign only labels the result; mu and tau stay symbolic.
DerivedPotential derive_effective_potential(int q, Sign sign);

struct PotentialComparison {
  int q = 1;
  Sign sign = Sign::Minus;
  FuncPoly printed;      ///< effective_potential(q, sign) after substitution
  FuncPoly derived;      ///< -derive_effective_potential(q, sign).potential after substitution
  FuncPoly difference;   ///< printed - derived
  FuncPoly constant;     ///< derived field-free coefficient after substitution
  FuncPoly expected_constant;  ///< lambda (Lambda - s) C_q after substitution
  bool agree() const { return difference.is_zero(); }
};

PotentialComparison compare_effective_potentials(int q, Sign sign);

/// Weight grading: 2 + order for every field atom, 2 for each B0.
int weight_of(const Monomial& m);

}  // namespace ltbx::algebra
