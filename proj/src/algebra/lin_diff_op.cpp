#include "ltbx/algebra/lin_diff_op.hpp"

#include <algorithm>
#include <sstream>

#include "ltbx/error.hpp"

namespace ltbx::algebra {

LinDiffOp LinDiffOp::from_linear_in(const FuncPoly& p, Field arg) {
  LinDiffOp op;
  for (const auto& [key, c] : p.terms()) {
    auto it = std::find_if(key.atoms.begin(), key.atoms.end(),
                           [arg](const FieldAtom& a) { return a.field == arg; });
    const auto n = std::count_if(key.atoms.begin(), key.atoms.end(),
                                 [arg](const FieldAtom& a) { return a.field == arg; });
    if (n != 1)
      throw IdentityError("LinDiffOp: term " + key_to_string(key) + " is not linear in " +
                          std::string(field_name(arg)));
    MonomialKey rest = key;
    rest.atoms.erase(rest.atoms.begin() + (it - key.atoms.begin()));
    FuncPoly coeff;
    coeff.add_term(rest, c);
    op.add(it->d, it->dbar, coeff);
  }
  return op;
}

FuncPoly LinDiffOp::coefficient(int d, int dbar) const {
  auto it = coeffs_.find({d, dbar});
  return it == coeffs_.end() ? FuncPoly{} : it->second;
}

void LinDiffOp::add(int d, int dbar, const FuncPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace({d, dbar}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

int LinDiffOp::order() const {
  int m = -1;
  for (const auto& [idx, c] : coeffs_) m = std::max(m, idx.first + idx.second);
  return m;
}

FuncPoly LinDiffOp::to_funcpoly(Field arg) const {
  FuncPoly out;
  for (const auto& [idx, c] : coeffs_) out += c * FuncPoly::atom(arg, idx.first, idx.second);
  return out;
}

std::string LinDiffOp::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : coeffs_) {
    if (!first) os << " + ";
    os << "(" << c.to_string() << ")*U[" << idx.first << "," << idx.second << "]";
    first = false;
  }
  return os.str();
}

FuncPoly apply(const LinDiffOp& op, const FuncPoly& g) {
  FuncPoly out;
  for (const auto& [idx, c] : op.coefficients()) out += c * g.derivative(idx.first, idx.second);
  return out;
}

}  // namespace ltbx::algebra
