#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace ltbx {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static CMatrix identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static CMatrix diagonal(const std::vector<double>& d) {
    CMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t size() const { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<cplx>& data() const { return a_; }

  CMatrix& operator+=(const CMatrix& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  CMatrix& operator*=(double s) {
    for (auto& x : a_) x *= s;
    return *this;
  }
  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, double s) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0)) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  CMatrix adjoint() const {
    CMatrix m(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
  }
  double max_offdiag_abs() const {
    double m = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (i != j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
  }
  bool is_real() const {
    for (const auto& x : a_)
      if (x.imag() != 0.0) return false;
    return true;
  }
  /// Largest |A - A*| entry.
  double hermitian_defect() const {
    double m = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

}  // namespace ltbx
