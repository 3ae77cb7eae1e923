#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltbx/algebra/gaussian_rational.hpp"

namespace ltbx::algebra {

// Formal commuting scalar indeterminates. Enumerators are listed in name
// order ("B0" < "Lambda" < "lambda" < "mu" < "s" < "tau"), which is the
// canonical order used for printing and serialization.
enum class Scalar : std::uint8_t { B0, Lambda, lambda, mu, s, tau };
inline constexpr std::size_t kScalarCount = 6;
inline constexpr std::array<Scalar, kScalarCount> kAllScalars = {
    Scalar::B0, Scalar::Lambda, Scalar::lambda, Scalar::mu, Scalar::s, Scalar::tau};

std::string_view scalar_name(Scalar s);
std::optional<Scalar> scalar_from_name(std::string_view name);

// Real-valued fields: magnetic perturbation b, electric potential V, and the
// formal argument U of the linear differential operators X_q, Y_q.
enum class Field : std::uint8_t { b, V, U };

std::string_view field_name(Field f);
std::optional<Field> field_from_name(std::string_view name);

/// d^d dbar^dbar applied to a field (Wirtinger derivatives).
struct FieldAtom {
  Field field = Field::b;
  int d = 0;
  int dbar = 0;

  int weight() const { return 2 + d + dbar; }
  int order() const { return d + dbar; }
  FieldAtom conj() const { return {field, dbar, d}; }

  friend auto operator<=>(const FieldAtom&, const FieldAtom&) = default;
};

/// Scalar exponents plus a sorted multiset of field atoms; the coefficient
/// lives in FuncPoly's term map.
struct MonomialKey {
  std::array<std::uint8_t, kScalarCount> scalars{};
  std::vector<FieldAtom> atoms;  // sorted ascending, repeats allowed

  int weight() const;
  /// Sum over atoms of (d - dbar). Zero for every monomial that is invariant
  /// under rotations when all fields are radial.
  int charge() const;
  bool field_free() const { return atoms.empty(); }
  int scalar_degree(Scalar s) const { return scalars[static_cast<std::size_t>(s)]; }

  friend bool operator==(const MonomialKey&, const MonomialKey&) = default;
  friend bool operator<(const MonomialKey& a, const MonomialKey& b) {
    if (a.atoms != b.atoms) return a.atoms < b.atoms;
    return a.scalars < b.scalars;
  }
};

struct Monomial {
  GaussianRational coeff;
  MonomialKey key;

  int weight() const { return key.weight(); }
};

/// Exact polynomial in field derivatives and scalar symbols with Gaussian
/// rational coefficients. Terms are kept canonical: like terms merged, zero
/// coefficients removed, iteration in MonomialKey order.
class FuncPoly {
 public:
  using TermMap = std::map<MonomialKey, GaussianRational>;

  FuncPoly() = default;
  FuncPoly(long c);                  // NOLINT(google-explicit-constructor)
  FuncPoly(GaussianRational c);      // NOLINT(google-explicit-constructor)

  static FuncPoly scalar(Scalar s, int power = 1);
  static FuncPoly atom(Field f, int d = 0, int dbar = 0);
  static FuncPoly field(Field f) { return atom(f); }
  /// Laplacian^k f = 4^k d^k dbar^k f.
  static FuncPoly laplacian(Field f, int k = 1);
  static FuncPoly monomial(const Monomial& m);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::vector<Monomial> monomials() const;

  void add_term(const MonomialKey& key, const GaussianRational& c);

  FuncPoly& operator+=(const FuncPoly& o);
  FuncPoly& operator-=(const FuncPoly& o);
  FuncPoly& operator*=(const FuncPoly& o);
  FuncPoly& operator*=(const GaussianRational& c);

  friend FuncPoly operator+(FuncPoly a, const FuncPoly& b) { return a += b; }
  friend FuncPoly operator-(FuncPoly a, const FuncPoly& b) { return a -= b; }
  friend FuncPoly operator*(const FuncPoly& a, const FuncPoly& b);
  friend FuncPoly operator*(FuncPoly a, const GaussianRational& c) { return a *= c; }
  friend FuncPoly operator*(const GaussianRational& c, FuncPoly a) { return a *= c; }
  FuncPoly operator-() const;

  friend bool operator==(const FuncPoly& a, const FuncPoly& b) { return a.terms_ == b.terms_; }

  FuncPoly pow(int n) const;

  /// Wirtinger derivatives, Leibniz rule term by term. Scalars are constants.
  FuncPoly d() const;
  FuncPoly dbar() const;
  FuncPoly derivative(int d, int dbar) const;

  /// Complex conjugation for real fields and real scalars.
  FuncPoly conj() const;
  FuncPoly re() const;
  FuncPoly im() const;

  /// Replaces every occurrence of scalar `s` by `value`.
  FuncPoly substitute(Scalar s, const FuncPoly& value) const;

  /// Terms without field atoms (a polynomial in the scalars).
  FuncPoly field_free_part() const;
  FuncPoly field_part() const;
  /// Constant coefficient (no atoms, no scalars).
  GaussianRational constant_term() const;
  /// Coefficient of exactly `key` (zero if absent).
  GaussianRational coefficient(const MonomialKey& key) const;

  bool contains_field(Field f) const;
  bool contains_scalar(Scalar s) const;
  /// Largest derivative order over atoms of field `f`; -1 if `f` is absent.
  int max_order(Field f) const;
  /// Weight of every term if all terms share one weight.
  std::optional<int> homogeneous_weight() const;
  bool is_rotation_invariant() const;

  /// Human-readable form, e.g. "8*b^2 + 12*B0*b + 8*b[1,1]" where b[d,dbar]
  /// is d^d dbar^dbar b.
  std::string to_string() const;

 private:
  TermMap terms_;
};

std::string atom_to_string(const FieldAtom& a);
std::string key_to_string(const MonomialKey& k);

}  // namespace ltbx::algebra
