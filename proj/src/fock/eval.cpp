#include "ltbx/fock/eval.hpp"

#include <algorithm>
#include <string>

#include "ltbx/error.hpp"

namespace ltbx::fock {

using algebra::Field;
using algebra::FieldAtom;

CompiledPoly::CompiledPoly(const algebra::FuncPoly& p, const FieldSpec& spec, const ScalarBindings& bindings)
    : spec_(&spec) {
  for (const auto& [key, c] : p.terms()) {
    Term t;
    t.coeff = c.to_complex();
    for (algebra::Scalar s : algebra::kAllScalars) {
      const int e = key.scalar_degree(s);
      if (e == 0) continue;
      auto it = bindings.find(s);
      if (it == bindings.end())
        throw ConfigError("unbound scalar symbol '" + std::string(algebra::scalar_name(s)) + "'");
      for (int i = 0; i < e; ++i) t.coeff *= it->second;
    }
    for (const auto& a : key.atoms) {
      if (a.field == Field::U) throw ConfigError("cannot evaluate the formal argument U");
      const int kmin = spec.min_smoothness(a.field);
      if (a.order() > kmin - 1)
        throw NumericalError("derivative of order " + std::to_string(a.order()) + " of " +
                             std::string(algebra::field_name(a.field)) + " needs bump smoothness k >= " +
                             std::to_string(a.order() + 1) + ", have k = " + std::to_string(kmin));
      auto pos = std::find(atoms_.begin(), atoms_.end(), a);
      int idx = static_cast<int>(pos - atoms_.begin());
      if (pos == atoms_.end()) atoms_.push_back(a);
      if (!t.factors.empty() && t.factors.back().first == idx)
        ++t.factors.back().second;
      else
        t.factors.push_back({idx, 1});
    }
    terms_.push_back(std::move(t));
  }
  scratch_.resize(atoms_.size());
}

std::complex<double> CompiledPoly::operator()(point z) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    std::complex<double> v = 0.0;
    for (const auto& bump : spec_->bumps(atoms_[i].field)) v += bump.derivative(atoms_[i].d, atoms_[i].dbar, z);
    scratch_[i] = v;
  }
  std::complex<double> sum = 0.0;
  for (const auto& t : terms_) {
    std::complex<double> v = t.coeff;
    for (const auto& [idx, pw] : t.factors)
      for (int i = 0; i < pw; ++i) v *= scratch_[idx];
    sum += v;
  }
  return sum;
}

std::complex<double> eval_funcpoly(const algebra::FuncPoly& p, const FieldSpec& spec, point z,
                                   const ScalarBindings& bindings) {
  return CompiledPoly(p, spec, bindings)(z);
}

}  // namespace ltbx::fock
