#pragma once

#include <complex>
#include <map>
#include <vector>

#include "ltbx/algebra/func_poly.hpp"
#include "ltbx/fock/field_spec.hpp"

namespace ltbx::fock {

using ScalarBindings = std::map<algebra::Scalar, double>;

/// A FuncPoly with its scalar symbols bound and its field atoms collected,
/// ready for repeated evaluation against one FieldSpec.
class CompiledPoly {
 public:
  /// Throws ConfigError on an unbound scalar or a U atom, NumericalError when
  /// an atom's derivative order exceeds k-1 for some bump of its field.
  CompiledPoly(const algebra::FuncPoly& p, const FieldSpec& spec, const ScalarBindings& bindings);

  std::complex<double> operator()(point z) const;
  bool is_constant() const { return atoms_.empty(); }

 private:
  struct Term {
    std::complex<double> coeff;
    std::vector<std::pair<int, int>> factors;  // (atom index, power)
  };
  const FieldSpec* spec_;
  std::vector<algebra::FieldAtom> atoms_;
  std::vector<Term> terms_;
  mutable std::vector<std::complex<double>> scratch_;
};

std::complex<double> eval_funcpoly(const algebra::FuncPoly& p, const FieldSpec& spec, point z,
                                   const ScalarBindings& bindings);

}  // namespace ltbx::fock
