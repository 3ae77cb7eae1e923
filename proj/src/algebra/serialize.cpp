#include "ltbx/algebra/serialize.hpp"

#include <algorithm>

#include "ltbx/error.hpp"

namespace ltbx::algebra {

namespace {

nlohmann::json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

mpz_class integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw ConfigError("FuncPoly JSON: coefficient entries must be integers or integer strings");
}

}  // namespace

nlohmann::json to_json(const FuncPoly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [key, c] : p.terms()) {
    nlohmann::json m;
    m["coeff"] = {integer_to_json(c.real().get_num()), integer_to_json(c.real().get_den()),
                  integer_to_json(c.imag().get_num()), integer_to_json(c.imag().get_den())};
    nlohmann::json scalars = nlohmann::json::object();
    for (Scalar s : kAllScalars)
      if (key.scalar_degree(s) > 0) scalars[std::string(scalar_name(s))] = key.scalar_degree(s);
    m["scalars"] = scalars;
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& a : key.atoms)
      atoms.push_back({{"field", std::string(field_name(a.field))}, {"d", a.d}, {"dbar", a.dbar}});
    m["atoms"] = atoms;
    out.push_back(std::move(m));
  }
  return out;
}

FuncPoly funcpoly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ConfigError("FuncPoly JSON: expected a list of monomials");
  FuncPoly p;
  for (const auto& m : j) {
    const auto& c = m.at("coeff");
    if (!c.is_array() || c.size() != 4) throw ConfigError("FuncPoly JSON: coeff must have 4 entries");
    mpq_class re(integer_from_json(c[0]), integer_from_json(c[1]));
    mpq_class im(integer_from_json(c[2]), integer_from_json(c[3]));
    MonomialKey key;
    for (const auto& [name, e] : m.at("scalars").items()) {
      auto s = scalar_from_name(name);
      if (!s) throw ConfigError("FuncPoly JSON: unknown scalar '" + name + "'");
      key.scalars[static_cast<std::size_t>(*s)] = static_cast<std::uint8_t>(e.get<int>());
    }
    for (const auto& a : m.at("atoms")) {
      auto f = field_from_name(a.at("field").get<std::string>());
      if (!f) throw ConfigError("FuncPoly JSON: unknown field");
      key.atoms.push_back({*f, a.at("d").get<int>(), a.at("dbar").get<int>()});
    }
    std::sort(key.atoms.begin(), key.atoms.end());
    p.add_term(key, GaussianRational(re, im));
  }
  return p;
}

nlohmann::json to_json(const LinDiffOp& op) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [idx, c] : op.coefficients())
    out.push_back({{"d", idx.first}, {"dbar", idx.second}, {"coeff", to_json(c)}});
  return out;
}

LinDiffOp lindiffop_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ConfigError("LinDiffOp JSON: expected a list");
  LinDiffOp op;
  for (const auto& e : j) op.add(e.at("d").get<int>(), e.at("dbar").get<int>(), funcpoly_from_json(e.at("coeff")));
  return op;
}

std::string dump_golden(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace ltbx::algebra
