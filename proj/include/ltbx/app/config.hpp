#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "ltbx/fock/field_spec.hpp"
#include "ltbx/fock/quadrature.hpp"

namespace ltbx::app {

enum class Format { Csv, Json };

struct LambdaGrid {
  double max = 0.1;
  double min = 1e-6;
  int per_decade = 4;
};

/// Disk indicator profile c * 1{r < R} (k = 0), or a bump when k >= 1.
struct DiskSpec {
  double R = 1.0;
  double c = 1.0;
  int k = 0;
};

struct RunConfig {
  std::string command;        // zxy | effpot | toeplitz | split | verify
  int q = 1;
  std::string sign = "-";     // effpot: "-", "+" or "both"
  int N = 25;
  fock::FieldSpec field;
  std::optional<LambdaGrid> lambda_grid;  // unset: command default
  std::optional<DiskSpec> disk;
  std::string method = "oracle";  // toeplitz: oracle | matrix
  int n_max = 100;                // toeplitz oracle: number of eigenvalues listed
  fock::GridOptions grid;
  std::string emit_matrices = "none";  // none | csv | ltbx
  Format format = Format::Csv;
  int threads = 1;  // not part of the hash
};

/// Strict parse. Missing keys take command-specific defaults; unknown keys,
/// type errors and range errors raise ConfigError with a field path.
RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Range and smoothness checks, run again after command-line overrides.
void validate(const RunConfig& cfg);

/// Fully expanded config. Threads are left out, so the hash ignores them.
nlohmann::json to_json(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);
std::string config_hash_hex(const RunConfig& cfg);

/// toeplitz: 1e-1..1e-60, 1 per decade; split: 1e-1*B0..1e-6*B0, 4 per decade.
LambdaGrid effective_lambda_grid(const RunConfig& cfg);

/// Landau level the field spec is used at: q for effpot/split, 0 for toeplitz.
int target_level(const RunConfig& cfg);

/// Text for --help.
std::string defaults_help();

}  // namespace ltbx::app
