#include "ltbx/app/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "ltbx/error.hpp"

namespace ltbx::app {

namespace {

const std::set<std::string> kCommands = {"zxy", "effpot", "toeplitz", "split", "verify"};

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw ConfigError((path.empty() ? key : path + "." + key) + ": unknown key");
}

std::string at_path(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

int int_at(const nlohmann::json& j, const std::string& key, const std::string& path) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(at_path(path, key) + ": expected an integer");
  return v.get<int>();
}

double number_at(const nlohmann::json& j, const std::string& key, const std::string& path) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(at_path(path, key) + ": expected a number");
  return v.get<double>();
}

std::string string_at(const nlohmann::json& j, const std::string& key, const std::string& path) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw ConfigError(at_path(path, key) + ": expected a string");
  return v.get<std::string>();
}

void set_command_defaults(RunConfig& cfg) {
  if (cfg.command == "toeplitz") {
    cfg.q = 0;
    cfg.N = 30;
  }
}

}  // namespace

LambdaGrid effective_lambda_grid(const RunConfig& cfg) {
  if (cfg.lambda_grid) return *cfg.lambda_grid;
  if (cfg.command == "toeplitz") return {0.1, 1e-60, 1};
  return {0.1 * cfg.field.B0, 1e-6 * cfg.field.B0, 4};
}

int target_level(const RunConfig& cfg) { return cfg.command == "toeplitz" ? 0 : cfg.q; }

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(j, {"command", "q", "sign", "N", "field", "lambda_grid", "disk", "method", "n_max", "grid",
                     "emit_matrices", "format", "threads"},
                 "");
  if (!j.contains("command")) throw ConfigError("command: missing");
  RunConfig cfg;
  cfg.command = string_at(j, "command", "");
  if (!kCommands.count(cfg.command))
    throw ConfigError("command: expected one of zxy, effpot, toeplitz, split, verify");
  set_command_defaults(cfg);

  if (j.contains("q")) cfg.q = int_at(j, "q", "");
  if (j.contains("sign")) cfg.sign = string_at(j, "sign", "");
  if (j.contains("N")) cfg.N = int_at(j, "N", "");
  if (j.contains("field")) cfg.field = fock::field_spec_from_json(j.at("field"), "field");
  if (j.contains("lambda_grid")) {
    const auto& g = j.at("lambda_grid");
    if (!g.is_object()) throw ConfigError("lambda_grid: expected an object");
    reject_unknown(g, {"max", "min", "per_decade"}, "lambda_grid");
    LambdaGrid lg = effective_lambda_grid(cfg);
    if (g.contains("max")) lg.max = number_at(g, "max", "lambda_grid");
    if (g.contains("min")) lg.min = number_at(g, "min", "lambda_grid");
    if (g.contains("per_decade")) lg.per_decade = int_at(g, "per_decade", "lambda_grid");
    cfg.lambda_grid = lg;
  }
  if (j.contains("disk")) {
    const auto& d = j.at("disk");
    if (!d.is_object()) throw ConfigError("disk: expected an object");
    reject_unknown(d, {"R", "c", "k"}, "disk");
    DiskSpec disk;
    if (d.contains("R")) disk.R = number_at(d, "R", "disk");
    if (d.contains("c")) disk.c = number_at(d, "c", "disk");
    if (d.contains("k")) disk.k = int_at(d, "k", "disk");
    cfg.disk = disk;
  }
  if (j.contains("method")) cfg.method = string_at(j, "method", "");
  if (j.contains("n_max")) cfg.n_max = int_at(j, "n_max", "");
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (!g.is_object()) throw ConfigError("grid: expected an object");
    reject_unknown(g, {"nodes_per_panel", "panel_width", "n_theta"}, "grid");
    if (g.contains("nodes_per_panel")) cfg.grid.nodes_per_panel = int_at(g, "nodes_per_panel", "grid");
    if (g.contains("panel_width")) cfg.grid.panel_width = number_at(g, "panel_width", "grid");
    if (g.contains("n_theta")) cfg.grid.n_theta = int_at(g, "n_theta", "grid");
  }
  if (j.contains("emit_matrices")) cfg.emit_matrices = string_at(j, "emit_matrices", "");
  if (j.contains("format")) {
    const std::string f = string_at(j, "format", "");
    if (f == "csv")
      cfg.format = Format::Csv;
    else if (f == "json")
      cfg.format = Format::Json;
    else
      throw ConfigError("format: expected csv or json");
  }
  if (j.contains("threads")) cfg.threads = int_at(j, "threads", "");
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  if (cfg.q < 0) throw ConfigError("q: must be non-negative");
  if (cfg.command == "effpot" && cfg.q < 1) throw ConfigError("q: effpot requires q >= 1");
  if (cfg.sign != "-" && cfg.sign != "+" && cfg.sign != "both") throw ConfigError("sign: expected \"-\", \"+\" or \"both\"");
  if (cfg.N < 1 || cfg.N > 200) throw ConfigError("N: must be in [1, 200]");
  const LambdaGrid lg = effective_lambda_grid(cfg);
  if (!(lg.max > 0) || !(lg.min > 0) || lg.min > lg.max) throw ConfigError("lambda_grid: need 0 < min <= max");
  if (lg.per_decade < 1 || lg.per_decade > 100)
    throw ConfigError("lambda_grid.per_decade: must be in [1, 100]");
  if (cfg.disk) {
    if (!(cfg.disk->R > 0)) throw ConfigError("disk.R: must be positive");
    if (cfg.disk->k < 0) throw ConfigError("disk.k: must be non-negative");
  }
  if (cfg.method != "oracle" && cfg.method != "matrix") throw ConfigError("method: expected oracle or matrix");
  if (cfg.method == "matrix" && cfg.disk && cfg.disk->k < 1)
    throw ConfigError("disk.k: the matrix method needs a bump with k >= 1");
  if (cfg.n_max < 1 || cfg.n_max > 100000) throw ConfigError("n_max: must be in [1, 100000]");
  if (cfg.grid.nodes_per_panel < 2 || cfg.grid.nodes_per_panel > 64)
    throw ConfigError("grid.nodes_per_panel: must be in [2, 64]");
  if (!(cfg.grid.panel_width > 0)) throw ConfigError("grid.panel_width: must be positive");
  if (cfg.grid.n_theta != 0 && cfg.grid.n_theta < 4 * cfg.N + 16)
    throw ConfigError("grid.n_theta: must be 0 (auto) or at least 4N+16 = " + std::to_string(4 * cfg.N + 16));
  if (cfg.emit_matrices != "none" && cfg.emit_matrices != "csv" && cfg.emit_matrices != "ltbx")
    throw ConfigError("emit_matrices: expected none, csv or ltbx");
  if (cfg.threads < 1 || cfg.threads > 256) throw ConfigError("threads: must be in [1, 256]");

  if (cfg.command == "verify") return;
  const int q = target_level(cfg);
  const int need = 2 * q + 6;
  for (const char* name : {"b", "V"}) {
    const auto& bumps = name[0] == 'b' ? cfg.field.b : cfg.field.V;
    for (std::size_t i = 0; i < bumps.size(); ++i)
      if (bumps[i].k < need)
        throw ConfigError("field." + std::string(name) + "[" + std::to_string(i) + "].k: level q = " +
                          std::to_string(q) + " needs k >= 2q+6 = " + std::to_string(need) + ", got " +
                          std::to_string(bumps[i].k));
  }
}

RunConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["command"] = cfg.command;
  if (cfg.command == "verify") return j;
  j["q"] = cfg.q;
  j["field"] = fock::to_json(cfg.field);
  if (cfg.command == "effpot") j["sign"] = cfg.sign;
  if (cfg.command == "toeplitz" || cfg.command == "split") {
    j["N"] = cfg.N;
    const LambdaGrid lg = effective_lambda_grid(cfg);
    j["lambda_grid"] = {{"max", lg.max}, {"min", lg.min}, {"per_decade", lg.per_decade}};
    j["grid"] = {{"nodes_per_panel", cfg.grid.nodes_per_panel}, {"panel_width", cfg.grid.panel_width},
                 {"n_theta", cfg.grid.n_theta}};
    j["emit_matrices"] = cfg.emit_matrices;
  }
  if (cfg.command == "toeplitz") {
    j["method"] = cfg.method;
    j["n_max"] = cfg.n_max;
    if (cfg.disk) j["disk"] = {{"R", cfg.disk->R}, {"c", cfg.disk->c}, {"k", cfg.disk->k}};
  }
  j["format"] = cfg.format == Format::Csv ? "csv" : "json";
  return j;
}

std::uint64_t config_hash(const RunConfig& cfg) {
  // FNV-1a over the canonical (sorted-key) JSON dump
  const std::string s = to_json(cfg).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash_hex(const RunConfig& cfg) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  return buf;
}

std::string defaults_help() {
  return R"(Config file keys (JSON object; unknown keys are rejected):
  command        zxy | effpot | toeplitz | split | verify   (required)
  q              Landau level; default 1 (toeplitz ignores it)
  sign           effpot branch: "-" (default), "+" or "both"
  N              basis size; default 25 (split), 30 (toeplitz matrix)
  field          {"B0": 1.0, "b": [bump...], "V": [bump...]}, bump =
                 {"center": [x, y], "c": .., "R": .., "k": ..}; default {"B0": 1}
                 every bump needs k >= 2q+6 (q = 0 for toeplitz)
  lambda_grid    {"max", "min", "per_decade"}; toeplitz default 1e-1..1e-60, 1/decade;
                 split default 1e-1*B0..1e-6*B0, 4/decade
  disk           toeplitz profile {"R": 1, "c": 1, "k": 0}; k = 0 is the indicator
  method         toeplitz: oracle (default, closed form) or matrix (quadrature + pencil)
  n_max          toeplitz oracle: eigenvalues listed; default 100
  grid           {"nodes_per_panel": 20, "panel_width": 0.5, "n_theta": 0 (= 4N+16)}
  emit_matrices  none (default) | csv | ltbx
  format         csv (default) | json
  threads        assembly threads; default 1; not part of the config hash)";
}

}  // namespace ltbx::app
