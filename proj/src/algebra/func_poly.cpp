#include "ltbx/algebra/func_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ltbx::algebra {

namespace {

constexpr std::array<std::string_view, kScalarCount> kScalarNames = {"B0", "Lambda", "lambda",
                                                                     "mu", "s",      "tau"};
constexpr std::array<std::string_view, 3> kFieldNames = {"b", "V", "U"};

MonomialKey multiply_keys(const MonomialKey& a, const MonomialKey& b) {
  MonomialKey out;
  for (std::size_t i = 0; i < kScalarCount; ++i) {
    int e = a.scalars[i] + b.scalars[i];
    if (e > 255) throw std::overflow_error("FuncPoly: scalar exponent overflow");
    out.scalars[i] = static_cast<std::uint8_t>(e);
  }
  out.atoms.reserve(a.atoms.size() + b.atoms.size());
  std::merge(a.atoms.begin(), a.atoms.end(), b.atoms.begin(), b.atoms.end(),
             std::back_inserter(out.atoms));
  return out;
}

// Leibniz rule: differentiates each distinct atom once, weighted by its
// multiplicity.
template <class Shift>
FuncPoly differentiate(const FuncPoly& p, Shift shift) {
  FuncPoly out;
  for (const auto& [key, c] : p.terms()) {
    const auto& atoms = key.atoms;
    for (std::size_t i = 0; i < atoms.size();) {
      std::size_t j = i;
      while (j < atoms.size() && atoms[j] == atoms[i]) ++j;
      const long mult = static_cast<long>(j - i);
      MonomialKey nk;
      nk.scalars = key.scalars;
      nk.atoms = atoms;
      nk.atoms.erase(nk.atoms.begin() + static_cast<std::ptrdiff_t>(i));
      FieldAtom shifted = shift(atoms[i]);
      nk.atoms.insert(std::upper_bound(nk.atoms.begin(), nk.atoms.end(), shifted), shifted);
      out.add_term(nk, c * GaussianRational(mult));
      i = j;
    }
  }
  return out;
}

}  // namespace

std::string_view scalar_name(Scalar s) { return kScalarNames[static_cast<std::size_t>(s)]; }

std::optional<Scalar> scalar_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kScalarCount; ++i)
    if (kScalarNames[i] == name) return static_cast<Scalar>(i);
  return std::nullopt;
}

std::string_view field_name(Field f) { return kFieldNames[static_cast<std::size_t>(f)]; }

std::optional<Field> field_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kFieldNames.size(); ++i)
    if (kFieldNames[i] == name) return static_cast<Field>(i);
  return std::nullopt;
}

int MonomialKey::weight() const {
  int w = 2 * scalars[static_cast<std::size_t>(Scalar::B0)];
  for (const auto& a : atoms) w += a.weight();
  return w;
}

int MonomialKey::charge() const {
  int c = 0;
  for (const auto& a : atoms) c += a.d - a.dbar;
  return c;
}

FuncPoly::FuncPoly(long c) : FuncPoly(GaussianRational(c)) {}

FuncPoly::FuncPoly(GaussianRational c) {
  if (!c.is_zero()) terms_.emplace(MonomialKey{}, std::move(c));
}

FuncPoly FuncPoly::scalar(Scalar s, int power) {
  if (power < 0) throw std::invalid_argument("FuncPoly::scalar: negative power");
  MonomialKey k;
  k.scalars[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(power);
  FuncPoly p;
  p.add_term(k, 1);
  return p;
}

FuncPoly FuncPoly::atom(Field f, int d, int dbar) {
  if (d < 0 || dbar < 0) throw std::invalid_argument("FuncPoly::atom: negative derivative order");
  MonomialKey k;
  k.atoms.push_back({f, d, dbar});
  FuncPoly p;
  p.add_term(k, 1);
  return p;
}

FuncPoly FuncPoly::laplacian(Field f, int k) {
  long four_k = 1;
  for (int i = 0; i < k; ++i) four_k *= 4;
  return atom(f, k, k) * GaussianRational(four_k);
}

FuncPoly FuncPoly::monomial(const Monomial& m) {
  FuncPoly p;
  p.add_term(m.key, m.coeff);
  return p;
}

std::vector<Monomial> FuncPoly::monomials() const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back({c, k});
  return out;
}

void FuncPoly::add_term(const MonomialKey& key, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FuncPoly& FuncPoly::operator+=(const FuncPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

FuncPoly& FuncPoly::operator-=(const FuncPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

FuncPoly operator*(const FuncPoly& a, const FuncPoly& b) {
  FuncPoly out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add_term(multiply_keys(ka, kb), ca * cb);
  return out;
}

FuncPoly& FuncPoly::operator*=(const FuncPoly& o) {
  *this = *this * o;
  return *this;
}

FuncPoly& FuncPoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

FuncPoly FuncPoly::operator-() const {
  FuncPoly out = *this;
  for (auto& [k, v] : out.terms_) v = -v;
  return out;
}

FuncPoly FuncPoly::pow(int n) const {
  if (n < 0) throw std::invalid_argument("FuncPoly::pow: negative exponent");
  FuncPoly out(1);
  for (int i = 0; i < n; ++i) out *= *this;
  return out;
}

FuncPoly FuncPoly::d() const {
  return differentiate(*this, [](FieldAtom a) { return FieldAtom{a.field, a.d + 1, a.dbar}; });
}

FuncPoly FuncPoly::dbar() const {
  return differentiate(*this, [](FieldAtom a) { return FieldAtom{a.field, a.d, a.dbar + 1}; });
}

FuncPoly FuncPoly::derivative(int d, int dbar) const {
  FuncPoly out = *this;
  for (int i = 0; i < d; ++i) out = out.d();
  for (int i = 0; i < dbar; ++i) out = out.dbar();
  return out;
}

FuncPoly FuncPoly::conj() const {
  FuncPoly out;
  for (const auto& [k, c] : terms_) {
    MonomialKey nk;
    nk.scalars = k.scalars;
    nk.atoms.reserve(k.atoms.size());
    for (const auto& a : k.atoms) nk.atoms.push_back(a.conj());
    std::sort(nk.atoms.begin(), nk.atoms.end());
    out.add_term(nk, c.conj());
  }
  return out;
}

FuncPoly FuncPoly::re() const { return (*this + conj()) * GaussianRational(mpq_class(1, 2)); }

FuncPoly FuncPoly::im() const {
  // (p - conj p) / (2i)
  return (*this - conj()) * GaussianRational(0, mpq_class(-1, 2));
}

FuncPoly FuncPoly::substitute(Scalar s, const FuncPoly& value) const {
  const auto idx = static_cast<std::size_t>(s);
  FuncPoly out;
  std::vector<FuncPoly> powers{FuncPoly(1)};
  for (const auto& [k, c] : terms_) {
    const int e = k.scalars[idx];
    if (e == 0) {
      out.add_term(k, c);
      continue;
    }
    while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * value);
    MonomialKey rest = k;
    rest.scalars[idx] = 0;
    FuncPoly term;
    term.add_term(rest, c);
    out += term * powers[static_cast<std::size_t>(e)];
  }
  return out;
}

FuncPoly FuncPoly::field_free_part() const {
  FuncPoly out;
  for (const auto& [k, c] : terms_)
    if (k.field_free()) out.terms_.emplace(k, c);
  return out;
}

FuncPoly FuncPoly::field_part() const {
  FuncPoly out;
  for (const auto& [k, c] : terms_)
    if (!k.field_free()) out.terms_.emplace(k, c);
  return out;
}

GaussianRational FuncPoly::constant_term() const { return coefficient(MonomialKey{}); }

GaussianRational FuncPoly::coefficient(const MonomialKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

bool FuncPoly::contains_field(Field f) const { return max_order(f) >= 0; }

bool FuncPoly::contains_scalar(Scalar s) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first.scalar_degree(s) > 0; });
}

int FuncPoly::max_order(Field f) const {
  int m = -1;
  for (const auto& [k, c] : terms_)
    for (const auto& a : k.atoms)
      if (a.field == f) m = std::max(m, a.order());
  return m;
}

std::optional<int> FuncPoly::homogeneous_weight() const {
  std::optional<int> w;
  for (const auto& [k, c] : terms_) {
    if (!w) w = k.weight();
    else if (*w != k.weight()) return std::nullopt;
  }
  return w;
}

bool FuncPoly::is_rotation_invariant() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.charge() == 0; });
}

std::string atom_to_string(const FieldAtom& a) {
  std::string s(field_name(a.field));
  if (a.d != 0 || a.dbar != 0) s += "[" + std::to_string(a.d) + "," + std::to_string(a.dbar) + "]";
  return s;
}

std::string key_to_string(const MonomialKey& k) {
  std::vector<std::string> factors;
  for (Scalar s : kAllScalars) {
    int e = k.scalar_degree(s);
    if (e == 0) continue;
    std::string f(scalar_name(s));
    if (e > 1) f += "^" + std::to_string(e);
    factors.push_back(f);
  }
  for (std::size_t i = 0; i < k.atoms.size();) {
    std::size_t j = i;
    while (j < k.atoms.size() && k.atoms[j] == k.atoms[i]) ++j;
    std::string f = atom_to_string(k.atoms[i]);
    if (j - i > 1) f += "^" + std::to_string(j - i);
    factors.push_back(f);
    i = j;
  }
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? "*" : "") + factors[i];
  return out;
}

std::string FuncPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    std::string body = key_to_string(k);
    std::string coeff;
    bool negative = false;
    if (c.is_real()) {
      mpq_class r = c.real();
      negative = sgn(r) < 0;
      mpq_class a = abs(r);
      if (a != 1 || body.empty()) coeff = a.get_str();
    } else {
      coeff = c.to_string();
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    os << coeff;
    if (!coeff.empty() && !body.empty()) os << "*";
    os << body;
    first = false;
  }
  return os.str();
}

}  // namespace ltbx::algebra
