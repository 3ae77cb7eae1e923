#include "ltbx/algebra/landau_forms.hpp"

#include <stdexcept>

#include "ltbx/error.hpp"

namespace ltbx::algebra {

namespace {

void require_positive(int q, const char* what) {
  if (q < 1) throw std::invalid_argument(std::string(what) + ": requires q >= 1");
}

FuncPoly B0() { return FuncPoly::scalar(Scalar::B0); }
FuncPoly sym(Scalar s) { return FuncPoly::scalar(s); }
FuncPoly b() { return FuncPoly::atom(Field::b); }
FuncPoly V() { return FuncPoly::atom(Field::V); }
GaussianRational rat(long n, long d = 1) { return GaussianRational(mpq_class(n, d)); }

}  // namespace

char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

FuncPoly landau_constant(int q) {
  if (q < 0) throw std::invalid_argument("landau_constant: q < 0");
  long fact = 1;
  for (int i = 2; i <= q; ++i) fact *= i;
  return FuncPoly::scalar(Scalar::B0, q) * GaussianRational(fact << q);
}

OpExpr Q_pow(int n) { return OpExpr::Q().pow(n); }
OpExpr Qbar_pow(int n) { return OpExpr::Qbar().pow(n); }

FuncPoly z_poly(int q) {
  require_positive(q, "z_poly");
  FuncPoly vac = vacuum_form(Q_pow(q) * Qbar_pow(q));
  const FuncPoly cq = landau_constant(q);
  if (vac.field_free_part() != cq)
    throw IdentityError("z_poly: field-free part " + vac.field_free_part().to_string() +
                        " differs from C_q = " + cq.to_string());
  return vac - cq;
}

LinDiffOp x_op(int q) {
  require_positive(q, "x_op");
  FuncPoly vac = vacuum_form(Q_pow(q) * OpExpr::func(FuncPoly::atom(Field::U)) * Qbar_pow(q));
  LinDiffOp op = LinDiffOp::from_linear_in(vac);
  if (op.order() > 2 * q) throw IdentityError("x_op: order exceeds 2q");
  return op;
}

LinDiffOp y_op(int q) {
  if (q < 0) throw std::invalid_argument("y_op: requires q >= 0");
  FuncPoly vac = vacuum_form(Q_pow(q + 1) * OpExpr::func(FuncPoly::atom(Field::U)) * Qbar_pow(q));
  LinDiffOp op = LinDiffOp::from_linear_in(vac);
  if (op.order() > 2 * q + 1) throw IdentityError("y_op: order exceeds 2q+1");
  return op;
}

FuncPoly substitute_level_scalars(const FuncPoly& p, int q, Sign sign) {
  const GaussianRational pm = sign == Sign::Plus ? rat(1) : rat(-1);
  const FuncPoly lam = sym(Scalar::lambda);
  const FuncPoly Lambda = B0() * rat(2L * q);
  const FuncPoly s = Lambda + B0() * pm;
  const FuncPoly mu = (Lambda + lam * pm + s) * rat(1, 2);
  const FuncPoly tau = (B0() - lam) * rat(1, 2);
  return p.substitute(Scalar::mu, mu)
      .substitute(Scalar::tau, tau)
      .substitute(Scalar::s, s)
      .substitute(Scalar::Lambda, Lambda);
}

FuncPoly effective_potential(int q, Sign sign, bool substitute) {
  require_positive(q, "effective_potential");
  const GaussianRational pm = sign == Sign::Plus ? rat(1) : rat(-1);
  const FuncPoly Lambda = sym(Scalar::Lambda);
  const FuncPoly lam = sym(Scalar::lambda);
  const FuncPoly s = sym(Scalar::s);
  const FuncPoly mu = sym(Scalar::mu);
  const FuncPoly B = B0() + b();

  FuncPoly w;
  w -= (Lambda + lam * pm + B0() * rat(2)) * (s + B0() * rat(2)) * z_poly(q);
  w -= z_poly(q + 2);
  w += (mu + B0() * rat(3)) * z_poly(q + 1) * rat(2);
  const FuncPoly x_arg = (B * rat(2) - b() + mu) * b() * rat(4) - (B * rat(4) - mu * rat(2) + V()) * V();
  w -= apply(x_op(q), x_arg);
  w -= apply(x_op(q + 1), V() - b() * rat(3)) * rat(2);
  w -= apply(y_op(q), V().d() - b().d() * rat(2)).im() * rat(4);
  return substitute ? substitute_level_scalars(w, q, sign) : w;
}

DerivedPotential derive_effective_potential(int q, Sign /*sign*/) {
  require_positive(q, "derive_effective_potential");
  const OpExpr shifted = OpExpr::Qbar() * OpExpr::Q() + OpExpr::func(V()) - OpExpr::scalar(sym(Scalar::mu));
  FuncPoly form = vacuum_form(Q_pow(q) * shifted * shifted * Qbar_pow(q));
  form -= sym(Scalar::tau).pow(2) * vacuum_form(Q_pow(q) * Qbar_pow(q));
  return {form.field_free_part(), form.field_part()};
}

PotentialComparison compare_effective_potentials(int q, Sign sign) {
  PotentialComparison c;
  c.q = q;
  c.sign = sign;
  c.printed = effective_potential(q, sign, /*substitute=*/true);
  const DerivedPotential d = derive_effective_potential(q, sign);
  c.derived = -substitute_level_scalars(d.potential, q, sign);
  c.difference = c.printed - c.derived;
  c.constant = substitute_level_scalars(d.constant, q, sign);
  c.expected_constant = substitute_level_scalars(
      sym(Scalar::lambda) * (sym(Scalar::Lambda) - sym(Scalar::s)) * landau_constant(q), q, sign);
  return c;
}

int weight_of(const Monomial& m) { return m.key.weight(); }

}  // namespace ltbx::algebra
