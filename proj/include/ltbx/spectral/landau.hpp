#pragma once

#include <vector>

#include "ltbx/algebra/func_poly.hpp"
#include "ltbx/fock/matrices.hpp"
#include "ltbx/matrix.hpp"

namespace ltbx::spectral {

/// Vacuum forms behind the Rayleigh-Ritz matrices on Qbar^q span{phi_n}:
///   gram_form = vacuum(Q^q Qbar^q) = C_q + Z_q
///   energy_form = vacuum(Q^q (Qbar Q + V) Qbar^q)
struct LandauForms {
  algebra::FuncPoly gram_form;
  algebra::FuncPoly energy_form;
};
LandauForms landau_forms(int q);

struct LandauMatrices {
  CMatrix A;   // energy
  CMatrix Bm;  // Gram of the trial space
};

LandauMatrices landau_form_matrices(int q, const fock::FieldSpec& spec, int N, const fock::QuadratureGrid& grid,
                                    const fock::AssemblyOptions& opt = {});

/// Ritz values of (A, Bm), ascending.
std::vector<double> ritz_values(const LandauMatrices& m);

}  // namespace ltbx::spectral
