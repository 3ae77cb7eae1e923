#include "ltbx/app/commands.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "ltbx/algebra/landau_forms.hpp"
#include "ltbx/algebra/serialize.hpp"
#include "ltbx/app/criteria.hpp"
#include "ltbx/app/output.hpp"
#include "ltbx/error.hpp"
#include "ltbx/fock/matrices.hpp"
#include "ltbx/fock/matrix_io.hpp"
#include "ltbx/fock/toeplitz_oracle.hpp"
#include "ltbx/format.hpp"
#include "ltbx/spectral/diagnostics.hpp"
#include "ltbx/spectral/landau.hpp"
#include "ltbx/spectral/splitting.hpp"

namespace ltbx::app {

namespace fs = std::filesystem;

namespace {

using algebra::Sign;
using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Context {
  const RunConfig& cfg;
  fs::path out;
  std::string hash;
  std::ostream& log;

  json header() const { return {{"config_hash", hash}, {"config", to_json(cfg)}}; }

  void write(const std::string& name, const std::string& content) const {
    write_atomic(out / name, content);
    log << "wrote " << (out / name).string() << "\n";
  }
  void write_json(const std::string& name, json body) const {
    json j = header();
    j.update(body);
    write(name, dump_json(j));
  }
  std::string csv(const std::string& columns) const { return csv_stamp(cfg.command, hash) + columns + "\n"; }
};

std::string f17(double v) { return std::isnan(v) ? "nan" : fmt17(v); }

json poly_entry(const algebra::FuncPoly& p) { return {{"text", p.to_string()}, {"terms", algebra::to_json(p)}}; }
json op_entry(const algebra::LinDiffOp& op) { return {{"text", op.to_string()}, {"terms", algebra::to_json(op)}}; }

void emit_matrix(const Context& ctx, const std::string& stem, const CMatrix& M) {
  if (ctx.cfg.emit_matrices == "csv") {
    std::ostringstream os;
    os << csv_stamp(ctx.cfg.command, ctx.hash);
    fock::write_matrix_csv(os, M);
    ctx.write(stem + ".csv", os.str());
  } else if (ctx.cfg.emit_matrices == "ltbx") {
    std::ostringstream os;
    fock::write_matrix_ltbx(os, M);
    ctx.write(stem + ".ltbx", os.str());
    ctx.write_json(stem + ".ltbx.meta.json", {{"matrix", stem}, {"N", M.size()}});
  }
}

int cmd_zxy(const Context& ctx) {
  const int q = ctx.cfg.q;
  json body{{"q", q}};
  if (q >= 1) {
    body["C"] = poly_entry(algebra::landau_constant(q));
    body["Z"] = poly_entry(algebra::z_poly(q));
    body["X"] = op_entry(algebra::x_op(q));
    ctx.log << "Z_" << q << " = " << body["Z"]["text"].get<std::string>() << "\n";
    ctx.log << "X_" << q << "[U] = " << body["X"]["text"].get<std::string>() << "\n";
  }
  body["Y"] = op_entry(algebra::y_op(q));
  ctx.log << "Y_" << q << "[U] = " << body["Y"]["text"].get<std::string>() << "\n";
  ctx.write_json("zxy_q" + std::to_string(q) + ".json", body);
  return kOk;
}

int cmd_effpot(const Context& ctx) {
  std::vector<Sign> signs;
  if (ctx.cfg.sign != "+") signs.push_back(Sign::Minus);
  if (ctx.cfg.sign != "-") signs.push_back(Sign::Plus);
  bool all_agree = true;
  for (Sign s : signs) {
    const auto c = algebra::compare_effective_potentials(ctx.cfg.q, s);
    all_agree = all_agree && c.agree();
    const std::string tag = s == Sign::Minus ? "minus" : "plus";
    json body{{"q", ctx.cfg.q},
              {"sign", std::string(1, algebra::sign_char(s))},
              {"agree", c.agree()},
              {"printed", poly_entry(c.printed)},
              {"derived", poly_entry(c.derived)},
              {"difference", poly_entry(c.difference)},
              {"constant", poly_entry(c.constant)},
              {"expected_constant", poly_entry(c.expected_constant)}};
    ctx.log << "W" << algebra::sign_char(s) << ", q = " << ctx.cfg.q << ": "
            << (c.agree() ? "printed formula agrees with the first-principles expansion"
                          : "printed formula differs; printed - derived = " + c.difference.to_string())
            << "\n";
    ctx.write_json("effpot_q" + std::to_string(ctx.cfg.q) + "_" + tag + ".json", body);
  }
  return all_agree ? kOk : kDivergence;
}

std::vector<double> lambda_values(const RunConfig& cfg) {
  const LambdaGrid g = effective_lambda_grid(cfg);
  return spectral::log_grid(g.max, g.min, g.per_decade);
}

struct EigenRow {
  double lambda, log10_lambda, s;
  bool trusted;
};

// s uses the 1-based rank n+1 of the non-increasing list
double rank_s(int n, double log_abs) { return std::exp((std::lgamma(n + 2.0) + log_abs) / (n + 1)); }

void write_toeplitz(const Context& ctx, const std::vector<EigenRow>& rows, const spectral::CountingReport& counts,
                    json extra) {
  if (ctx.cfg.format == Format::Json) {
    json ev = json::array(), ct = json::array();
    for (std::size_t n = 0; n < rows.size(); ++n)
      ev.push_back({{"n", n}, {"lambda", rows[n].lambda}, {"log10_lambda", rows[n].log10_lambda},
                    {"s_n", rows[n].s}, {"trusted", rows[n].trusted}});
    for (const auto& r : counts.rows)
      ct.push_back({{"lambda", r.lambda}, {"count", r.count}, {"xi", r.xi}, {"ratio_paper", r.ratio_paper},
                    {"ratio_oracle", r.ratio_oracle}});
    extra["eigenvalues"] = ev;
    extra["counting"] = ct;
    ctx.write_json("toeplitz.json", extra);
    return;
  }
  std::string e = ctx.csv("n,lambda,log10_lambda,s_n,trusted");
  for (std::size_t n = 0; n < rows.size(); ++n)
    e += std::to_string(n) + "," + f17(rows[n].lambda) + "," + f17(rows[n].log10_lambda) + "," + f17(rows[n].s) +
         "," + (rows[n].trusted ? "1" : "0") + "\n";
  ctx.write("toeplitz_eigenvalues.csv", e);
  std::string c = ctx.csv("lambda,count,xi,ratio_paper,ratio_oracle");
  for (const auto& r : counts.rows)
    c += f17(r.lambda) + "," + std::to_string(r.count) + "," + f17(r.xi) + "," + f17(r.ratio_paper) + "," +
         f17(r.ratio_oracle) + "\n";
  ctx.write("toeplitz_counting.csv", c);
  ctx.write_json("toeplitz_summary.json", extra);
}

int cmd_toeplitz(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const double B0 = cfg.field.B0;
  const auto grid = lambda_values(cfg);
  std::vector<EigenRow> rows;
  json extra{{"method", cfg.method}};

  if (cfg.method == "oracle") {
    if (!cfg.field.b.empty()) throw ConfigError("toeplitz: the oracle needs b = 0 (use method matrix)");
    fock::RadialProfile W;
    if (cfg.disk)
      W.bumps = {fock::RadialBump{{0, 0}, cfg.disk->c, cfg.disk->R, cfg.disk->k}};
    else if (!cfg.field.V.empty())
      W.bumps = cfg.field.V;
    else
      W = fock::RadialProfile::disk(1.0);
    for (const auto& bmp : W.bumps)
      if (!bmp.centered()) throw ConfigError("toeplitz: the oracle needs bumps centered at the origin");
    auto seq = fock::radial_toeplitz_sequence(W, B0, cfg.n_max);
    std::stable_sort(seq.begin(), seq.end(), [](const fock::LogValue& a, const fock::LogValue& b) {
      return a.sign != 0 && (b.sign == 0 || a.log_abs > b.log_abs);
    });
    for (std::size_t n = 0; n < seq.size(); ++n) {
      const auto& v = seq[n];
      rows.push_back({v.value(), v.sign == 0 ? kNaN : v.log10_abs(),
                      v.sign > 0 ? rank_s(static_cast<int>(n), v.log_abs) : kNaN, true});
    }
    const auto counts = spectral::oracle_counting(W, B0, grid);
    extra["trust_floor"] = 0.0;
    if (W.bumps.size() == 1 && W.bumps[0].k == 0) {
      json ref;
      ref["x"] = B0 * W.bumps[0].R * W.bumps[0].R / 2;
      ref["s_limit_disk"] = B0 * W.bumps[0].R * W.bumps[0].R / 2;
      ref["capacity_bound_B0_R_over_2"] = B0 / 2 * W.bumps[0].R;
      extra["reference"] = ref;
    }
    ctx.log << "lambda_0 = " << fmt17(rows.at(0).lambda) << "\n";
    write_toeplitz(ctx, rows, counts, extra);
    return kOk;
  }

  fock::FieldSpec spec = cfg.field;
  if (cfg.disk) spec.V = {fock::RadialBump{{0, 0}, cfg.disk->c, cfg.disk->R, cfg.disk->k}};
  if (spec.V.empty()) throw ConfigError("toeplitz: method matrix needs field.V or disk");
  const auto qgrid = fock::make_grid(spec, cfg.N, cfg.grid);
  fock::AssemblyOptions opt;
  opt.threads = cfg.threads;
  const CMatrix G = fock::gram_matrix(spec, cfg.N, qgrid, opt);
  const CMatrix M = fock::weighted_matrix(algebra::FuncPoly::atom(algebra::Field::V), spec, cfg.N, qgrid,
                                          {{algebra::Scalar::B0, B0}}, opt);
  const auto res = spectral::toeplitz_result(spectral::gen_eigensolve(M, G), cfg.N);
  for (std::size_t n = 0; n < res.eigenvalues.size(); ++n) {
    const double v = res.eigenvalues[n];
    rows.push_back({v, v == 0 ? kNaN : std::log10(std::abs(v)), v > 0 ? rank_s(static_cast<int>(n), std::log(v)) : kNaN,
                    res.trusted(n)});
  }
  const auto counts = spectral::counting_report(res.eigenvalues, grid);
  extra["trust_floor"] = res.trust_floor;
  extra["deflated"] = res.deflated;
  extra["N"] = cfg.N;
  emit_matrix(ctx, "gram", G);
  emit_matrix(ctx, "toeplitz", M);
  ctx.log << "largest eigenvalue " << fmt17(rows.at(0).lambda) << ", trust floor " << fmt17(res.trust_floor) << "\n";
  write_toeplitz(ctx, rows, counts, extra);
  return kOk;
}

int cmd_split(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const auto grid = lambda_values(cfg);
  spectral::SplittingOptions opt;
  opt.N = cfg.N;
  opt.grid = cfg.grid;
  opt.assembly.threads = cfg.threads;
  const auto rep = spectral::splitting_counts(cfg.q, cfg.field, grid, opt);

  if (cfg.emit_matrices != "none") {
    const auto qgrid = fock::make_grid(cfg.field, cfg.N, cfg.grid);
    const auto m = spectral::landau_form_matrices(cfg.q, cfg.field, cfg.N, qgrid, opt.assembly);
    emit_matrix(ctx, "split_energy", m.A);
    emit_matrix(ctx, "split_gram", m.Bm);
  }

  struct Series {
    std::string pipeline, side;
    const std::vector<long>* counts;
  };
  std::vector<Series> series;
  if (rep.ritz_counts) {
    series.push_back({"ritz", "plus", &rep.ritz_counts->plus});
    series.push_back({"ritz", "minus", &rep.ritz_counts->minus});
  }
  if (rep.oracle_counts) {
    series.push_back({"oracle", "plus", &rep.oracle_counts->plus});
    series.push_back({"oracle", "minus", &rep.oracle_counts->minus});
  }
  json pots = json::array();
  for (const auto& p : rep.potentials)
    pots.push_back({{"sign", std::string(1, algebra::sign_char(p.sign))},
                    {"derived_min", p.derived.min},
                    {"derived_max", p.derived.max},
                    {"printed_min", p.printed.min},
                    {"printed_max", p.printed.max}});
  json summary{{"q", rep.q},
               {"Lambda", rep.Lambda},
               {"window", {rep.window.lo, rep.window.hi}},
               {"single_pipeline", rep.single_pipeline},
               {"effective_potentials", pots}};

  if (cfg.format == Format::Json) {
    json ritz = json::array(), orc = json::array(), counts = json::array();
    for (double e : rep.ritz) ritz.push_back({{"E", e}, {"E_minus_Lambda", e - rep.Lambda}});
    for (const auto& s : rep.oracle) orc.push_back({{"m", s.m}, {"E", s.E}, {"E_minus_Lambda", s.E - rep.Lambda}});
    for (const auto& s : series)
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto row = spectral::counting_row(grid[i], (*s.counts)[i]);
        counts.push_back({{"pipeline", s.pipeline}, {"side", s.side}, {"lambda", row.lambda}, {"count", row.count},
                          {"xi", row.xi}, {"ratio_paper", row.ratio_paper}, {"ratio_oracle", row.ratio_oracle}});
      }
    summary["ritz"] = ritz;
    summary["oracle"] = orc;
    summary["counting"] = counts;
    ctx.write_json("split.json", summary);
  } else {
    std::string e = ctx.csv("source,m,E,E_minus_Lambda");
    for (double v : rep.ritz) e += "ritz,," + f17(v) + "," + f17(v - rep.Lambda) + "\n";
    for (const auto& s : rep.oracle)
      e += "oracle," + std::to_string(s.m) + "," + f17(s.E) + "," + f17(s.E - rep.Lambda) + "\n";
    ctx.write("split_eigenvalues.csv", e);
    std::string c = ctx.csv("pipeline,side,lambda,count,xi,ratio_paper,ratio_oracle");
    for (const auto& s : series)
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto row = spectral::counting_row(grid[i], (*s.counts)[i]);
        c += s.pipeline + "," + s.side + "," + f17(row.lambda) + "," + std::to_string(row.count) + "," + f17(row.xi) +
             "," + f17(row.ratio_paper) + "," + f17(row.ratio_oracle) + "\n";
      }
    ctx.write("split_counts.csv", c);
    ctx.write_json("split_summary.json", summary);
  }

  for (const auto& p : rep.potentials)
    ctx.log << "W" << algebra::sign_char(p.sign) << " on the inspection disk: derived [" << fmt17(p.derived.min) << ", "
            << fmt17(p.derived.max) << "], printed [" << fmt17(p.printed.min) << ", " << fmt17(p.printed.max) << "]\n";
  if (rep.single_pipeline) ctx.log << "non-radial field: Rayleigh-Ritz only (single pipeline)\n";
  if (rep.ritz_counts && rep.oracle_counts &&
      (rep.ritz_counts->plus != rep.oracle_counts->plus || rep.ritz_counts->minus != rep.oracle_counts->minus)) {
    ctx.log << "Rayleigh-Ritz and oracle counts differ on the lambda grid\n";
    return kDivergence;
  }
  return kOk;
}

int cmd_verify(const Context& ctx) {
  bool identity_failed = false, diverged = false;
  json results = json::array();
  std::string csv = ctx.csv("criterion,check,pass,detail");
  for (int id = 1; id <= 8; ++id) {
    const CriterionResult r = run_criterion(id, ctx.cfg.threads);
    ctx.log << format_result(r);
    if (!r.pass) (r.kind == FailureKind::Identity ? identity_failed : diverged) = true;
    results.push_back(app::to_json(r));
    for (const auto& c : r.checks) {
      std::string detail = c.detail;
      for (char& ch : detail)
        if (ch == '"') ch = '\'';
      csv += std::to_string(id) + ",\"" + c.name + "\"," + (c.pass ? "1" : "0") + ",\"" + detail + "\"\n";
    }
  }
  const int code = identity_failed ? kIdentityFailure : diverged ? kDivergence : kOk;
  if (ctx.cfg.format == Format::Json)
    ctx.write_json("verify_report.json", {{"criteria", results}, {"exit_status", code}});
  else
    ctx.write("verify_report.csv", csv);
  ctx.log << (code == kOk ? "verify: all criteria passed"
                          : code == kIdentityFailure ? "verify: exact identity failure"
                                                     : "verify: engine identities hold; printed values or probes diverge")
          << "\n";
  return code;
}

}  // namespace

int run(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  validate(cfg);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError("--out: cannot create " + out_dir.string() + ": " + ec.message());
  const Context ctx{cfg, out_dir, config_hash_hex(cfg), log};
  if (cfg.command == "zxy") return cmd_zxy(ctx);
  if (cfg.command == "effpot") return cmd_effpot(ctx);
  if (cfg.command == "toeplitz") return cmd_toeplitz(ctx);
  if (cfg.command == "split") return cmd_split(ctx);
  if (cfg.command == "verify") return cmd_verify(ctx);
  throw ConfigError("unknown command " + cfg.command);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kConfigError;
  if (dynamic_cast<const IdentityError*>(&e)) return kIdentityFailure;
  return kNumericalError;
}

}  // namespace ltbx::app
