#include "ltbx/algebra/op_expr.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ltbx::algebra {

namespace {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// (-2i)^j
GaussianRational minus_two_i_pow(int j) {
  GaussianRational r(1);
  const GaussianRational m(0, -2);
  for (int i = 0; i < j; ++i) r *= m;
  return r;
}

FuncPoly two_B() { return FuncPoly::scalar(Scalar::B0) * GaussianRational(2) + FuncPoly::atom(Field::b) * GaussianRational(2); }

void require_central(const FuncPoly& p) {
  if (!p.field_part().is_zero())
    throw std::invalid_argument("OpWord: prefactor must be field-free (central)");
}

bool is_redex(const OpLetter& l, const OpLetter& r) {
  if (l.kind == LetterKind::Q) return r.kind == LetterKind::Func || r.kind == LetterKind::Qbar;
  return l.kind == LetterKind::Func && r.kind == LetterKind::Qbar;
}

}  // namespace

bool OpWord::simplify() {
  require_central(prefactor);
  if (prefactor.is_zero()) return false;
  std::vector<OpLetter> out;
  out.reserve(letters.size());
  for (auto& l : letters) {
    if (l.kind == LetterKind::Func) {
      if (l.func.is_zero()) return false;
      if (!out.empty() && out.back().kind == LetterKind::Func) {
        out.back().func *= l.func;
        continue;
      }
    }
    out.push_back(std::move(l));
  }
  // A field-free Func letter is central and folds into the prefactor.
  std::vector<OpLetter> folded;
  folded.reserve(out.size());
  for (auto& l : out) {
    if (l.kind == LetterKind::Func && l.func.field_part().is_zero()) {
      prefactor *= l.func;
      continue;
    }
    folded.push_back(std::move(l));
  }
  letters = std::move(folded);
  // Folding can make two Func letters adjacent again.
  for (std::size_t i = 1; i < letters.size();) {
    if (letters[i].kind == LetterKind::Func && letters[i - 1].kind == LetterKind::Func) {
      letters[i - 1].func *= letters[i].func;
      letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return !prefactor.is_zero();
}

int OpWord::count(LetterKind k) const {
  return static_cast<int>(std::count_if(letters.begin(), letters.end(),
                                        [k](const OpLetter& l) { return l.kind == k; }));
}

OpExpr::OpExpr(OpWord w) {
  if (w.simplify()) words_.push_back(std::move(w));
}

OpExpr OpExpr::func(FuncPoly f) { return OpExpr(OpWord{1, {OpLetter::Func(std::move(f))}}); }

OpExpr OpExpr::scalar(FuncPoly central) { return OpExpr(OpWord{std::move(central), {}}); }

OpExpr& OpExpr::operator+=(const OpExpr& o) {
  words_.insert(words_.end(), o.words_.begin(), o.words_.end());
  return *this;
}

OpExpr& OpExpr::operator-=(const OpExpr& o) {
  for (OpWord w : o.words_) {
    w.prefactor = -w.prefactor;
    words_.push_back(std::move(w));
  }
  return *this;
}

OpExpr operator*(const OpExpr& a, const OpExpr& b) {
  OpExpr out;
  for (const auto& wa : a.words_) {
    for (const auto& wb : b.words_) {
      OpWord w;
      w.prefactor = wa.prefactor * wb.prefactor;
      w.letters = wa.letters;
      w.letters.insert(w.letters.end(), wb.letters.begin(), wb.letters.end());
      if (w.simplify()) out.words_.push_back(std::move(w));
    }
  }
  return out;
}

OpExpr OpExpr::pow(int n) const {
  if (n < 0) throw std::invalid_argument("OpExpr::pow: negative exponent");
  OpExpr out = OpExpr::scalar(1);
  for (int i = 0; i < n; ++i) out = out * *this;
  return out;
}

bool OpExpr::is_normal() const {
  for (const auto& w : words_)
    for (std::size_t i = 1; i < w.letters.size(); ++i)
      if (is_redex(w.letters[i - 1], w.letters[i])) return false;
  return true;
}

std::string OpExpr::to_string() const {
  if (words_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (i) os << " + ";
    const auto& w = words_[i];
    os << "(" << w.prefactor.to_string() << ")";
    for (const auto& l : w.letters) {
      switch (l.kind) {
        case LetterKind::Q: os << "*Q"; break;
        case LetterKind::Qbar: os << "*Qb"; break;
        case LetterKind::Func: os << "*[" << l.func.to_string() << "]"; break;
      }
    }
  }
  return os.str();
}

void NormalForm::add(int a, int c, const FuncPoly& f) {
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({a, c}, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NormalForm& NormalForm::operator+=(const NormalForm& o) {
  for (const auto& [k, f] : o.terms_) add(k.first, k.second, f);
  return *this;
}

FuncPoly NormalForm::vacuum() const {
  auto it = terms_.find({0, 0});
  return it == terms_.end() ? FuncPoly{} : it->second;
}

NormalForm NormalForm::times_Q() const {
  NormalForm out;
  for (const auto& [k, f] : terms_) out.add(k.first, k.second + 1, f);
  return out;
}

NormalForm NormalForm::times_Qbar() const {
  NormalForm out;
  const FuncPoly tb = two_B();
  for (const auto& [k, f] : terms_) {
    const auto [a, c] = k;
    out.add(a + 1, c, f);
    out.add(a, c, f.d() * GaussianRational(0, 2));
    FuncPoly dl = tb;  // dbar^l (2B)
    for (int l = 0; l <= c - 1; ++l) {
      out.add(a, c - 1 - l, f * dl * (minus_two_i_pow(l) * GaussianRational(binomial(c, l + 1))));
      dl = dl.dbar();
    }
  }
  return out;
}

NormalForm NormalForm::times_func(const FuncPoly& g) const {
  NormalForm out;
  for (const auto& [k, f] : terms_) {
    const auto [a, c] = k;
    FuncPoly dj = g;  // dbar^j g
    for (int j = 0; j <= c; ++j) {
      if (dj.is_zero()) break;
      out.add(a, c - j, f * dj * (minus_two_i_pow(j) * GaussianRational(binomial(c, j))));
      dj = dj.dbar();
    }
  }
  return out;
}

NormalForm NormalForm::times(const OpLetter& l) const {
  switch (l.kind) {
    case LetterKind::Q: return times_Q();
    case LetterKind::Qbar: return times_Qbar();
    case LetterKind::Func: return times_func(l.func);
  }
  return {};
}

OpExpr NormalForm::to_expr() const {
  OpExpr out;
  for (const auto& [k, f] : terms_) {
    OpWord w;
    for (int i = 0; i < k.first; ++i) w.letters.push_back(OpLetter::Qbar());
    w.letters.push_back(OpLetter::Func(f));
    for (int i = 0; i < k.second; ++i) w.letters.push_back(OpLetter::Q());
    out += OpExpr(std::move(w));
  }
  return out;
}

NormalForm normal_form(const OpExpr& e) {
  NormalForm total;
  for (const auto& w : e.words()) {
    NormalForm acc;
    acc.add(0, 0, w.prefactor);
    for (const auto& l : w.letters) acc = acc.times(l);
    total += acc;
  }
  return total;
}

NormalForm normal_form_by_rewriting(const OpExpr& e, std::mt19937_64* rng) {
  NormalForm out;
  std::vector<OpWord> pending(e.words().begin(), e.words().end());
  const FuncPoly tb = two_B();
  std::size_t steps = 0;
  constexpr std::size_t kStepLimit = 50'000'000;

  while (!pending.empty()) {
    if (++steps > kStepLimit) throw std::runtime_error("normal_form_by_rewriting: step limit exceeded");
    std::size_t wi = 0;
    if (rng) wi = std::uniform_int_distribution<std::size_t>(0, pending.size() - 1)(*rng);
    OpWord w = std::move(pending[wi]);
    pending[wi] = std::move(pending.back());
    pending.pop_back();
    if (!w.simplify()) continue;

    std::vector<std::size_t> redexes;
    for (std::size_t i = 1; i < w.letters.size(); ++i)
      if (is_redex(w.letters[i - 1], w.letters[i])) redexes.push_back(i - 1);

    if (redexes.empty()) {
      int a = 0;
      int c = 0;
      FuncPoly f = w.prefactor;
      for (const auto& l : w.letters) {
        if (l.kind == LetterKind::Qbar) ++a;
        else if (l.kind == LetterKind::Q) ++c;
        else f *= l.func;
      }
      out.add(a, c, f);
      continue;
    }

    std::size_t pos = redexes.front();
    if (rng) pos = redexes[std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(*rng)];
    const OpLetter left = w.letters[pos];
    const OpLetter right = w.letters[pos + 1];

    OpWord swapped = w;
    swapped.letters[pos] = right;
    swapped.letters[pos + 1] = left;

    FuncPoly extra;
    if (left.kind == LetterKind::Q && right.kind == LetterKind::Func) {
      extra = right.func.dbar() * GaussianRational(0, -2);
    } else if (left.kind == LetterKind::Func && right.kind == LetterKind::Qbar) {
      extra = left.func.d() * GaussianRational(0, 2);
    } else {
      extra = tb;
    }
    OpWord contracted = w;
    contracted.letters.erase(contracted.letters.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
    contracted.letters[pos] = OpLetter::Func(std::move(extra));

    pending.push_back(std::move(swapped));
    pending.push_back(std::move(contracted));
  }
  return out;
}

OpExpr normal_order(const OpExpr& e) { return normal_form(e).to_expr(); }

FuncPoly vacuum_form(const OpExpr& e) { return normal_form(e).vacuum(); }

OpExpr adjoint(const OpExpr& e) {
  OpExpr out;
  for (const auto& w : e.words()) {
    OpWord a;
    a.prefactor = w.prefactor.conj();
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
      switch (it->kind) {
        case LetterKind::Q: a.letters.push_back(OpLetter::Qbar()); break;
        case LetterKind::Qbar: a.letters.push_back(OpLetter::Q()); break;
        case LetterKind::Func: a.letters.push_back(OpLetter::Func(it->func.conj())); break;
      }
    }
    out += OpExpr(std::move(a));
  }
  return out;
}

}  // namespace ltbx::algebra
