#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ltbx/app/commands.hpp"
#include "ltbx/app/config.hpp"
#include "ltbx/error.hpp"

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ltbx::ConfigError("--config: cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ltbx::ConfigError("--config: malformed JSON in " + path + ": " + e.what());
  }
}

// "R=1,c=0.5,k=0" -> {"R": 1, "c": 0.5, "k": 0}
json parse_disk(const std::string& text) {
  json out = json::object();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ltbx::ConfigError("--disk: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      if (key == "k") {
        out[key] = std::stoi(value, &used);
      } else {
        out[key] = std::stod(value, &used);
      }
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw ltbx::ConfigError("--disk: bad value for " + key + ": '" + value + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ltbx: perturbed Landau Hamiltonian toolbox"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(ltbx::app::defaults_help() +
             "\n\nExit status: 0 success, 2 config error, 3 numerical precondition failure,\n"
             "4 identity-suite failure, 5 printed-formula or cross-oracle divergence.\n"
             "LTBX_SEED is reserved; nothing is stochastic.");

  std::string config_path, out_dir = ".", format;
  std::optional<int> threads;
  app.add_option("--config", config_path, "JSON run config")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (created if missing)");
  app.add_option("--threads", threads, "assembly threads (results do not depend on it)")->check(CLI::Range(1, 256));
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::optional<int> q, N, n_max;
  std::optional<double> B0;
  std::string sign, disk, method;

  auto* zxy = app.add_subcommand("zxy", "Z_q, X_q, Y_q as exact polynomials / operators");
  zxy->add_option("--q", q, "Landau level index");

  auto* effpot = app.add_subcommand("effpot", "printed effective potential vs first-principles expansion");
  effpot->add_option("--q", q, "Landau level index, >= 1");
  effpot->add_option("--sign", sign, "-, + or both")->check(CLI::IsMember({"-", "+", "both"}));

  auto* toeplitz = app.add_subcommand("toeplitz", "Toeplitz eigenvalues on the zero modes, decay and counting");
  toeplitz->add_option("--disk", disk, "radial profile R=..,c=..,k=.. (k = 0: indicator)");
  toeplitz->add_option("--B0", B0, "constant field strength");
  toeplitz->add_option("--method", method, "oracle or matrix")->check(CLI::IsMember({"oracle", "matrix"}));
  toeplitz->add_option("--n-max", n_max, "oracle: eigenvalues listed");
  toeplitz->add_option("--N", N, "matrix: basis size");

  auto* split = app.add_subcommand("split", "Landau level splitting: Rayleigh-Ritz and radial ODE oracle");
  split->add_option("--q", q, "Landau level index");
  split->add_option("--N", N, "basis size");
  split->add_option("--B0", B0, "constant field strength");

  app.add_subcommand("verify", "exact identity and oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ltbx::app::kConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    json j = config_path.empty() ? json::object() : read_json_file(config_path);
    if (!j.is_object()) throw ltbx::ConfigError("--config: expected a JSON object");
    if (j.contains("command") && j["command"] != command)
      throw ltbx::ConfigError("--config: command " + j["command"].dump() + " does not match subcommand " + command);
    j["command"] = command;
    if (q) j["q"] = *q;
    if (N) j["N"] = *N;
    if (n_max) j["n_max"] = *n_max;
    if (!sign.empty()) j["sign"] = sign;
    if (!method.empty()) j["method"] = method;
    if (!disk.empty()) j["disk"] = parse_disk(disk);
    if (B0) {
      if (!j.contains("field")) j["field"] = json::object();
      if (j["field"].is_object()) j["field"]["B0"] = *B0;
    }
    if (!format.empty()) j["format"] = format;
    if (threads) j["threads"] = *threads;
    const ltbx::app::RunConfig cfg = ltbx::app::parse_config(j);
    return ltbx::app::run(cfg, out_dir, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "ltbx " << command << ": " << e.what() << "\n";
    return ltbx::app::exit_code_for(e);
  }
}
