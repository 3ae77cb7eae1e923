#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ltbx/algebra/func_poly.hpp"

namespace ltbx::algebra {

enum class LetterKind : std::uint8_t { Q, Qbar, Func };

/// One letter of an operator word: the annihilation operator Q, the creation
/// operator Qbar = Q*, or multiplication by a function.
struct OpLetter {
  LetterKind kind = LetterKind::Func;
  FuncPoly func;  // only meaningful for Func

  static OpLetter Q() { return {LetterKind::Q, {}}; }
  static OpLetter Qbar() { return {LetterKind::Qbar, {}}; }
  static OpLetter Func(FuncPoly f) { return {LetterKind::Func, std::move(f)}; }

  friend bool operator==(const OpLetter&, const OpLetter&) = default;
};

/// A product of letters times a central prefactor. The prefactor must be
/// field-free (a polynomial in the scalar symbols) so that it commutes with
/// Q and Qbar; position-dependent functions go into Func letters.
struct OpWord {
  FuncPoly prefactor{1};
  std::vector<OpLetter> letters;

  /// Merges adjacent Func letters; returns false if the word is zero.
  bool simplify();
  int count(LetterKind k) const;

  friend bool operator==(const OpWord&, const OpWord&) = default;
};

/// Formal sum of operator words.
class OpExpr {
 public:
  OpExpr() = default;
  explicit OpExpr(OpWord w);

  static OpExpr Q() { return OpExpr(OpWord{1, {OpLetter::Q()}}); }
  static OpExpr Qbar() { return OpExpr(OpWord{1, {OpLetter::Qbar()}}); }
  static OpExpr func(FuncPoly f);
  static OpExpr scalar(FuncPoly central);

  const std::vector<OpWord>& words() const { return words_; }
  bool empty() const { return words_.empty(); }

  OpExpr& operator+=(const OpExpr& o);
  OpExpr& operator-=(const OpExpr& o);
  friend OpExpr operator+(OpExpr a, const OpExpr& b) { return a += b; }
  friend OpExpr operator-(OpExpr a, const OpExpr& b) { return a -= b; }
  friend OpExpr operator*(const OpExpr& a, const OpExpr& b);
  OpExpr pow(int n) const;

  /// True iff every word reads Qbar^a [Func] Q^c.
  bool is_normal() const;

  friend bool operator==(const OpExpr&, const OpExpr&) = default;

  std::string to_string() const;

 private:
  std::vector<OpWord> words_;
};

/// Canonical normal-ordered operator: a map (a, c) -> F representing
/// sum of Qbar^a F Q^c.
class NormalForm {
 public:
  using Key = std::pair<int, int>;

  NormalForm() = default;

  const std::map<Key, FuncPoly>& terms() const { return terms_; }
  void add(int a, int c, const FuncPoly& f);
  NormalForm& operator+=(const NormalForm& o);

  /// The function part of the Qbar^0 F Q^0 word.
  FuncPoly vacuum() const;

  NormalForm times_Q() const;
  NormalForm times_Qbar() const;
  NormalForm times_func(const FuncPoly& g) const;
  NormalForm times(const OpLetter& l) const;

  OpExpr to_expr() const;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;

 private:
  std::map<Key, FuncPoly> terms_;
};

/// Normal ordering by right-multiplying an accumulated normal form letter by
/// letter using closed-form commutators:
///   Q^c g   = sum_j C(c,j) (-2i dbar)^j g Q^(c-j)
///   Q^c Qb  = Qb Q^c + sum_l C(c,l+1) (-2i dbar)^l (2B) Q^(c-1-l)
///   F Qb    = Qb F + 2i dF
NormalForm normal_form(const OpExpr& e);

/// Normal ordering by the three elementary rewrite rules
///   Q f -> f Q - 2i dbar f,   f Qb -> Qb f + 2i d f,   Q Qb -> Qb Q + 2B0 + 2b,
/// applied one at a time. With rng == nullptr the leftmost redex of the
/// oldest pending word is rewritten; otherwise word and redex are drawn at
/// random. Serves as the independent route for confluence checks.
NormalForm normal_form_by_rewriting(const OpExpr& e, std::mt19937_64* rng = nullptr);

/// Returns e in canonical normal form (one word per (a, c), sorted).
OpExpr normal_order(const OpExpr& e);

/// F such that (e u, u) = (F u, u) for every zero mode u (Q u = 0).
FuncPoly vacuum_form(const OpExpr& e);

/// Formal adjoint: reverse words, swap Q and Qbar, conjugate functions.
OpExpr adjoint(const OpExpr& e);

}  // namespace ltbx::algebra
