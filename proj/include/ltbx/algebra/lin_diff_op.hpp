#pragma once

#include <map>
#include <string>
#include <utility>

#include "ltbx/algebra/func_poly.hpp"

namespace ltbx::algebra {

/// U -> sum c_{d,dbar} d^d dbar^dbar U with FuncPoly coefficients.
class LinDiffOp {
 public:
  using Index = std::pair<int, int>;

  LinDiffOp() = default;

  /// Collects a FuncPoly that is linear in the formal field U into an
  /// operator. Throws IdentityError if some term is not exactly linear in U.
  static LinDiffOp from_linear_in(const FuncPoly& p, Field arg = Field::U);

  const std::map<Index, FuncPoly>& coefficients() const { return coeffs_; }
  FuncPoly coefficient(int d, int dbar) const;
  void add(int d, int dbar, const FuncPoly& c);

  /// max(d + dbar) over the support; -1 for the zero operator.
  int order() const;
  bool is_zero() const { return coeffs_.empty(); }

  /// The operator applied to the formal field U, as a FuncPoly.
  FuncPoly to_funcpoly(Field arg = Field::U) const;

  friend bool operator==(const LinDiffOp&, const LinDiffOp&) = default;

  std::string to_string() const;

 private:
  std::map<Index, FuncPoly> coeffs_;
};

/// sum c_{d,dbar} * d^d dbar^dbar g, with exact Leibniz differentiation of g.
FuncPoly apply(const LinDiffOp& op, const FuncPoly& g);

}  // namespace ltbx::algebra
