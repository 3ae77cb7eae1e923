#include "ltbx/algebra/gaussian_rational.hpp"

#include <stdexcept>

namespace ltbx::algebra {

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  mpq_class den = o.re_ * o.re_ + o.im_ * o.im_;
  if (sgn(den) == 0) throw std::domain_error("GaussianRational: division by zero");
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / den;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) {
    if (im_ == 1) return "i";
    if (im_ == -1) return "-i";
    return im_.get_str() + "i";
  }
  std::string s = "(" + re_.get_str();
  s += sgn(im_) > 0 ? "+" : "-";
  mpq_class a = abs(im_);
  if (a != 1) s += a.get_str();
  s += "i)";
  return s;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

}  // namespace ltbx::algebra
