#include "ltbx/spectral/landau.hpp"

#include "ltbx/algebra/landau_forms.hpp"
#include "ltbx/error.hpp"
#include "ltbx/spectral/eigen.hpp"

namespace ltbx::spectral {

using algebra::OpExpr;

LandauForms landau_forms(int q) {
  if (q < 0) throw ConfigError("Landau level index q must be nonnegative");
  const OpExpr inner = OpExpr::Qbar() * OpExpr::Q() + OpExpr::func(algebra::FuncPoly::atom(algebra::Field::V));
  return {algebra::vacuum_form(algebra::Q_pow(q) * algebra::Qbar_pow(q)),
          algebra::vacuum_form(algebra::Q_pow(q) * inner * algebra::Qbar_pow(q))};
}

LandauMatrices landau_form_matrices(int q, const fock::FieldSpec& spec, int N, const fock::QuadratureGrid& grid,
                                    const fock::AssemblyOptions& opt) {
  const LandauForms f = landau_forms(q);
  const fock::ScalarBindings bind{{algebra::Scalar::B0, spec.B0}};
  return {fock::weighted_matrix(f.energy_form, spec, N, grid, bind, opt),
          fock::weighted_matrix(f.gram_form, spec, N, grid, bind, opt)};
}

std::vector<double> ritz_values(const LandauMatrices& m) { return gen_eigensolve(m.A, m.Bm).values; }

}  // namespace ltbx::spectral
