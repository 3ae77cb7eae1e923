#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace ltbx::app {

/// Identity: the engine contradicts itself (exit 4 in verify).
/// Divergence: a printed value or asymptotic probe disagrees with the
/// engine or oracle (exit 5).
enum class FailureKind { Identity, Divergence };

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = true;
  FailureKind kind = FailureKind::Identity;
  std::vector<Check> checks;
  double seconds = 0;
  double time_limit = 0;  // seconds; 0 means none
  nlohmann::json data;    // extra artifacts (term diffs, tables)
};

/// Criteria 1-10; 11 drives the CLI and lives in the acceptance binary.
CriterionResult run_criterion(int id, int threads = 1);

nlohmann::json to_json(const CriterionResult& r);
/// "PASS criterion N: title (x.xx s)" followed by indented check lines.
std::string format_result(const CriterionResult& r, bool with_checks = true);

}  // namespace ltbx::app
