#pragma once

#include <json.hpp>

#include "ltbx/algebra/func_poly.hpp"
#include "ltbx/algebra/lin_diff_op.hpp"

namespace ltbx::algebra {

// FuncPoly wire format: a JSON list of monomials in canonical order,
//   {"coeff": [re_num, re_den, im_num, im_den],
//    "scalars": {"B0": 2, ...},
//    "atoms": [{"field": "b", "d": 1, "dbar": 1}, ...]}
// Integers that do not fit in 64 bits are written as decimal strings.

nlohmann::json to_json(const FuncPoly& p);
FuncPoly funcpoly_from_json(const nlohmann::json& j);

// LinDiffOp: a list of {"d": .., "dbar": .., "coeff": <FuncPoly>} sorted by (d, dbar).
nlohmann::json to_json(const LinDiffOp& op);
LinDiffOp lindiffop_from_json(const nlohmann::json& j);

/// Stable text dump used for golden files (two-space indent, trailing newline).
std::string dump_golden(const nlohmann::json& j);

}  // namespace ltbx::algebra
