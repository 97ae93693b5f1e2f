#include "shapestat/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <memory>
#include <sstream>

#include "shapestat/dominance.hpp"
#include "shapestat/errors.hpp"
#include "shapestat/hellinger.hpp"
#include "shapestat/kde.hpp"
#include "shapestat/logconcave.hpp"
#include "shapestat/simulate.hpp"
#include "shapestat/unimodal.hpp"

namespace shapestat {

using nlohmann::json;

Sample read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t");
    std::string tok = line.substr(b, e - b + 1);
    if (lineno == 1 && tok == "value") continue;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size())
      throw input_error(path + ":" + std::to_string(lineno) + ": unparseable value '" + tok +
                        "'");
    if (!std::isfinite(v))
      throw input_error(path + ":" + std::to_string(lineno) + ": non-finite value");
    values.push_back(v);
  }
  if (values.empty()) throw input_error(path + ": no values");
  return Sample(std::move(values));
}

namespace {

json number_or_tag(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  if (v == -std::numeric_limits<double>::infinity()) return "-inf";
  return v;
}

json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

std::vector<double> parse_grid(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size())
      throw input_error(std::string("bad ") + what + " entry: " + tok);
    out.push_back(v);
  }
  if (out.empty()) throw input_error(std::string("empty ") + what);
  return out;
}

struct Output {
  std::string path;    // empty = stdout
  std::string format;  // json|csv

  void write(const json& doc, const std::string& csv_text) const {
    const std::string text = format == "csv" ? csv_text : doc.dump(2) + "\n";
    if (path.empty()) {
      std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw input_error("cannot write " + path);
      out << text;
    }
  }
};

std::string csv_cell(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---- density ---------------------------------------------------------

struct GridDensity {
  std::function<double(double)> pdf, cdf;
  double lo = 0.0, hi = 0.0;
  std::vector<double> jumps;  // discontinuities to represent exactly
  json params;
};

GridDensity build_density(const Sample& sample, const std::string& family, double eta,
                          const std::string& bw_selector) {
  GridDensity g;
  if (family == "unimodal") {
    BirgeConfig cfg;
    cfg.eta = eta;
    auto fit = std::make_shared<StepDensity>(birge_fit(sample, cfg));
    g.pdf = [fit](double x) { return fit->pdf(x); };
    g.cdf = [fit](double x) { return fit->cdf(x); };
    g.lo = fit->breakpoints.front();
    g.hi = fit->breakpoints.back();
    g.jumps = fit->breakpoints;
    g.params = {{"eta", eta > 0.0 ? eta : 1.0 / static_cast<double>(sample.size())},
                {"mode", fit->mode_location}};
  } else if (family == "logconcave") {
    auto fit = std::make_shared<LogConcaveFit>(lc_fit(sample));
    g.pdf = [fit](double x) { return fit->pdf(x); };
    g.cdf = [fit](double x) { return fit->cdf(x); };
    g.lo = fit->support_lo();
    g.hi = fit->support_hi();
    g.params = {{"knots", fit->knots().size()},
                {"converged", fit->converged()},
                {"optimality_gap", fit->optimality_gap()}};
  } else if (family == "logconcave-smoothed") {
    auto fit = std::make_shared<SmoothedLogConcaveFit>(lc_smooth(lc_fit(sample), sample));
    g.pdf = [fit](double x) { return fit->pdf(x); };
    g.cdf = [fit](double x) { return fit->cdf(x); };
    const double pad = 8.0 * std::sqrt(fit->gamma_sq());
    g.lo = fit->base().support_lo() - pad;
    g.hi = fit->base().support_hi() + pad;
    g.params = {{"gamma_sq", fit->gamma_sq()}, {"variance_clamped", fit->variance_clamped()}};
  } else if (family == "kde") {
    bool ties = false;
    const double h =
        bw_selector == "plugin" ? plugin_bandwidth(sample) : lscv_bandwidth(sample, &ties);
    auto fit = std::make_shared<KdeFit>(sample, h);
    g.pdf = [fit](double x) { return fit->pdf(x); };
    g.cdf = [fit](double x) { return fit->cdf(x); };
    g.lo = sample.min() - 8.0 * h;
    g.hi = sample.max() + 8.0 * h;
    g.params = {{"bandwidth", h}, {"selector", bw_selector}, {"tie_warning", ties}};
  } else {
    throw input_error("unknown density family: " + family);
  }
  return g;
}

int cmd_density(const std::string& input, const std::string& family, double eta,
                const std::string& bw, int grid, const Output& out) {
  Sample sample = read_samples(input);
  GridDensity g = build_density(sample, family, eta, bw);
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(grid) + 2 * g.jumps.size());
  for (int i = 0; i < grid; ++i)
    xs.push_back(g.lo + (g.hi - g.lo) * static_cast<double>(i) / (grid - 1));
  // Represent each discontinuity by its left limit and right neighbor so the
  // emitted table integrates exactly across jumps.
  for (double b : g.jumps) {
    if (b > g.lo && b < g.hi) {
      xs.push_back(b);
      xs.push_back(std::nextafter(b, g.hi));
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  json pts = json::array();
  std::string csv = "x,pdf,cdf\n";
  for (double x : xs) {
    const double p = g.pdf(x), c = g.cdf(x);
    pts.push_back({{"x", x}, {"pdf", p}, {"cdf", c}});
    csv += csv_cell(x) + "," + csv_cell(p) + "," + csv_cell(c) + "\n";
  }
  json doc = {{"schema_version", 1}, {"command", "density"},   {"family", family},
              {"n", sample.size()},  {"params", g.params},     {"grid", pts}};
  out.write(doc, csv);
  return 0;
}

// ---- dominance -------------------------------------------------------

int cmd_dominance(const std::string& xpath, const std::string& ypath,
                  const std::string& stat, const std::string& family, double p, double alpha,
                  bool conservative, const Output& out) {
  Sample x = read_samples(xpath);
  Sample y = read_samples(ypath);
  DominanceTestResult r = run_dominance_test(x, y, family_from_name(family),
                                             stat_from_name(stat), p, alpha, conservative);
  json doc = {{"schema_version", 1},
              {"command", "dominance"},
              {"statistic", stat_name(r.statistic)},
              {"family", family_name(r.family)},
              {"value", number_or_tag(r.value)},
              {"critical_value", r.critical_value},
              {"p_value", r.p_value},
              {"reject", r.reject},
              {"p", p},
              {"alpha", alpha},
              {"interval", {r.interval.lower, r.interval.upper}},
              {"interval_degenerate", r.interval.degenerate},
              {"conservative", r.conservative},
              {"c_mn", r.c_mn},
              {"lambda_hat", r.lambda_hat},
              {"asymptotics_unknown", r.asymptotics_unknown},
              {"m", r.m},
              {"n", r.n}};
  std::string csv =
      "statistic,family,value,critical_value,p_value,reject,interval_lo,interval_hi,c_mn\n";
  csv += stat_name(r.statistic) + "," + family_name(r.family) + "," + csv_cell(r.value) + "," +
         csv_cell(r.critical_value) + "," + csv_cell(r.p_value) + "," +
         (r.reject ? "true" : "false") + "," + csv_cell(r.interval.lower) + "," +
         csv_cell(r.interval.upper) + "," + csv_cell(r.c_mn) + "\n";
  out.write(doc, csv);
  return 0;
}

// ---- hellinger -------------------------------------------------------

int cmd_hellinger(const std::string& xpath, const std::string& ypath,
                  const std::string& family, double ci_level, const Output& out) {
  Sample x = read_samples(xpath);
  Sample y = read_samples(ypath);
  HellingerResult r = estimate_hellinger(x, y, hell_family_from_name(family), ci_level);
  json doc = {{"schema_version", 1},
              {"command", "hellinger"},
              {"family", hell_family_name(r.family)},
              {"h2", r.h2},
              {"h2_raw", r.h2_raw},
              {"sigma2", r.sigma2},
              {"ci_level", r.ci_level},
              {"lambda_hat", r.lambda_hat},
              {"n_x", r.n_x},
              {"n_y", r.n_y}};
  if (r.has_ci) {
    doc["ci_h2"] = {r.ci_h2_lo, r.ci_h2_hi};
    doc["ci_h2_raw"] = {r.ci_h2_raw_lo, r.ci_h2_raw_hi};
    doc["ci_h"] = {r.ci_h_lo, r.ci_h_hi};
  } else {
    doc["ci_h2"] = nullptr;
    doc["ci_h2_raw"] = nullptr;
    doc["ci_h"] = nullptr;
  }
  std::string csv = "family,h2,sigma2,ci_h2_lo,ci_h2_hi,ci_h_lo,ci_h_hi\n";
  csv += hell_family_name(r.family) + "," + csv_cell(r.h2) + "," + csv_cell(r.sigma2) + ",";
  if (r.has_ci) {
    csv += csv_cell(r.ci_h2_lo) + "," + csv_cell(r.ci_h2_hi) + "," + csv_cell(r.ci_h_lo) + "," +
           csv_cell(r.ci_h_hi);
  } else {
    csv += ",,,";
  }
  csv += "\n";
  out.write(doc, csv);
  return 0;
}

// ---- curves ----------------------------------------------------------

json curve_points_json(const std::vector<CurvePoint>& pts, const char* xname) {
  json arr = json::array();
  for (const CurvePoint& p : pts)
    arr.push_back({{xname, p.x}, {"estimate", p.estimate}, {"se", p.se}, {"reps", p.reps}});
  return arr;
}

std::string curve_points_csv(const std::vector<CurvePoint>& pts, const char* xname) {
  std::string csv = std::string(xname) + ",estimate,se,reps\n";
  for (const CurvePoint& p : pts)
    csv += csv_cell(p.x) + "," + csv_cell(p.estimate) + "," + csv_cell(p.se) + "," +
           std::to_string(p.reps) + "\n";
  return csv;
}

int cmd_simulate_power(char case_id, const std::string& stat, const std::string& family,
                       bool conservative, std::size_t m, std::size_t n, double p, double alpha,
                       std::size_t reps, std::uint64_t seed, const std::string& gammas,
                       const Output& out) {
  ScenarioSpec spec;
  spec.study = Study::kDominance;
  spec.case_id = case_id;
  spec.m = m;
  spec.n = n;
  spec.p = p;
  spec.alpha = alpha;
  spec.replicates = reps;
  spec.seed = seed;
  TestConfig cfg{stat_from_name(stat), family_from_name(family), conservative};
  const std::vector<double> grid = parse_grid(gammas, "gamma grid");
  auto curves = power_curves(spec, grid, {cfg});
  json doc = {{"schema_version", 1},
              {"command", "simulate-power"},
              {"case", std::string(1, case_id)},
              {"statistic", stat},
              {"family", family},
              {"conservative", conservative},
              {"m", m},
              {"n", n},
              {"p", p},
              {"alpha", alpha},
              {"reps", reps},
              {"seed", seed},
              {"points", curve_points_json(curves[0], "gamma")}};
  out.write(doc, curve_points_csv(curves[0], "gamma"));
  return 0;
}

int cmd_simulate_hellinger(char case_id, const std::string& estimators_csv,
                           const std::string& n_grid_csv, std::size_t reps, double ci_level,
                           std::uint64_t seed, const std::string& xpath,
                           const std::string& ypath, const Output& out) {
  std::vector<HellFamily> estimators;
  {
    std::stringstream ss(estimators_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) estimators.push_back(hell_family_from_name(tok));
  }
  std::vector<std::size_t> n_grid;
  for (double v : parse_grid(n_grid_csv, "n grid")) {
    if (v < 2.0) throw input_error("n grid entries must be >= 2");
    n_grid.push_back(static_cast<std::size_t>(v));
  }

  std::unique_ptr<SmoothedLogConcaveFit> cf, cg;
  if (case_id == 'c') {
    if (xpath.empty() || ypath.empty())
      throw input_error("hellinger case c needs --x and --y samples to fit the truth pair");
    Sample x = read_samples(xpath);
    Sample y = read_samples(ypath);
    cf = std::make_unique<SmoothedLogConcaveFit>(lc_smooth(lc_fit(x), x));
    cg = std::make_unique<SmoothedLogConcaveFit>(lc_smooth(lc_fit(y), y));
  }
  auto points =
      hellinger_experiment(case_id, n_grid, reps, estimators, seed, ci_level, cf.get(), cg.get());

  json arr = json::array();
  std::string csv =
      "n,estimator,truth,mean_estimate,se_estimate,sqrt_n_abs_bias,n_mse,mae,coverage,"
      "coverage_se,mean_ci_length,reps\n";
  for (const HellingerPoint& pt : points) {
    arr.push_back({{"n", pt.n},
                   {"estimator", hell_family_name(pt.estimator)},
                   {"truth", pt.truth},
                   {"mean_estimate", pt.mean_estimate},
                   {"se_estimate", pt.se_estimate},
                   {"sqrt_n_abs_bias", pt.sqrt_n_abs_bias},
                   {"n_mse", pt.n_mse},
                   {"mae", pt.mae},
                   {"coverage", number_or_null(pt.coverage)},
                   {"coverage_se", number_or_null(pt.coverage_se)},
                   {"mean_ci_length", number_or_null(pt.mean_ci_length)},
                   {"reps", pt.reps}});
    csv += std::to_string(pt.n) + "," + hell_family_name(pt.estimator) + "," +
           csv_cell(pt.truth) + "," + csv_cell(pt.mean_estimate) + "," +
           csv_cell(pt.se_estimate) + "," + csv_cell(pt.sqrt_n_abs_bias) + "," +
           csv_cell(pt.n_mse) + "," + csv_cell(pt.mae) + "," + csv_cell(pt.coverage) + "," + csv_cell(pt.coverage_se) +
           "," + csv_cell(pt.mean_ci_length) + "," + std::to_string(pt.reps) + "\n";
  }
  json doc = {{"schema_version", 1},
              {"command", "simulate-hellinger"},
              {"case", std::string(1, case_id)},
              {"ci_level", ci_level},
              {"reps", reps},
              {"seed", seed},
              {"points", arr}};
  out.write(doc, csv);
  return 0;
}

int cmd_crossval(const std::string& input, const std::string& methods_csv, std::size_t folds,
                 std::uint64_t seed, const Output& out) {
  Sample sample = read_samples(input);
  std::vector<DensityMethod> methods;
  std::stringstream ss(methods_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) methods.push_back(method_from_name(tok));
  auto rows = crossval_risk(sample, methods, folds, seed);
  json arr = json::array();
  std::string csv = "method,mise_err,neg_loglik,folds_used,failures\n";
  for (const RiskRow& r : rows) {
    arr.push_back({{"method", r.method},
                   {"mise_err", number_or_null(r.mise_err)},
                   {"neg_loglik", number_or_null(r.neg_loglik)},
                   {"folds_used", r.folds_used},
                   {"failures", r.failures}});
    csv += r.method + "," + csv_cell(r.mise_err) + "," + csv_cell(r.neg_loglik) + "," +
           std::to_string(r.folds_used) + "," + std::to_string(r.failures) + "\n";
  }
  json doc = {{"schema_version", 1}, {"command", "crossval"}, {"folds", folds},
              {"seed", seed},        {"n", sample.size()},    {"rows", arr}};
  out.write(doc, csv);
  return 0;
}

int cmd_power_near_data(const std::string& xpath, const std::string& ypath,
                        const std::string& stat, const std::string& family, double p,
                        double alpha, std::size_t reps, std::uint64_t seed,
                        const std::string& gammas, std::size_t projection_draws,
                        const Output& out) {
  Sample x = read_samples(xpath);
  Sample y = read_samples(ypath);
  TestConfig cfg{stat_from_name(stat), family_from_name(family), false};
  const std::vector<double> grid = parse_grid(gammas, "gamma grid");
  auto curves = power_near_data(x, y, grid, reps, {cfg}, seed, p, alpha, projection_draws);
  json doc = {{"schema_version", 1},
              {"command", "power-near-data"},
              {"statistic", stat},
              {"family", family},
              {"m", x.size()},
              {"n", y.size()},
              {"p", p},
              {"alpha", alpha},
              {"reps", reps},
              {"seed", seed},
              {"projection_draws", projection_draws},
              {"points", curve_points_json(curves[0], "gamma")}};
  out.write(doc, curve_points_csv(curves[0], "gamma"));
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"shapestat: shape-constrained two-sample inference"};
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  out.format = "json";
  app.add_option("--out", out.path, "output file (default stdout)");
  app.add_option("--format", out.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  std::string input, xpath, ypath;
  std::string family = "logconcave", stat = "min-t", bw = "lscv";
  std::string gammas = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
  std::string n_grid = "50,100,150,200,250,300,350,400,450,500";
  std::string estimators = "unimodal,logconcave,logconcave-smoothed,kde-naive,kde-bias-corrected";
  std::string methods = "unimodal,logconcave,logconcave-smoothed,kde-lscv,kde-plugin";
  std::string case_str = "a";
  double p = 0.05, alpha = 0.05, ci_level = 0.95, eta = 0.0;
  bool conservative = false;
  std::size_t m = 100, n = 100, reps = 2000, folds = 10, grid = 512, proj_draws = 1000;
  std::uint64_t seed = kDefaultSeed;

  auto* density = app.add_subcommand("density", "fit one density and emit a grid");
  density->fallthrough();
  density->add_option("--input", input, "sample CSV")->required();
  density->add_option("--family", family, "unimodal|logconcave|logconcave-smoothed|kde");
  density->add_option("--eta", eta, "Birge tolerance (default 1/n)");
  density->add_option("--bandwidth", bw, "kde selector: lscv|plugin")
      ->check(CLI::IsMember({"lscv", "plugin"}));
  density->add_option("--grid", grid, "grid points (default 512)");

  auto* dom = app.add_subcommand("dominance", "test non-dominance vs dominance");
  dom->fallthrough();
  dom->add_option("--x", xpath, "first sample CSV")->required();
  dom->add_option("--y", ypath, "second sample CSV")->required();
  dom->add_option("--stat", stat, "min-t|tsep|wrs");
  dom->add_option("--family", family, "empirical|unimodal|logconcave|logconcave-smoothed");
  dom->add_option("--p", p, "trim level (default 0.05)");
  dom->add_option("--alpha", alpha, "test level (default 0.05)");
  dom->add_flag("--conservative", conservative, "use C_mn * z_alpha for tsep");

  auto* hell = app.add_subcommand("hellinger", "squared Hellinger distance estimate");
  hell->fallthrough();
  hell->add_option("--x", xpath, "first sample CSV")->required();
  hell->add_option("--y", ypath, "second sample CSV")->required();
  hell->add_option("--family", family,
                   "unimodal|logconcave|logconcave-smoothed|kde-naive|kde-bias-corrected");
  hell->add_option("--ci-level", ci_level, "confidence level (default 0.95)");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo studies");
  sim->fallthrough();
  sim->require_subcommand(1);
  auto* sim_power = sim->add_subcommand("power", "power curve over gamma");
  sim_power->fallthrough();
  sim_power->add_option("--case", case_str, "scenario a-e")->required();
  sim_power->add_option("--stat", stat, "min-t|tsep|wrs");
  sim_power->add_option("--family", family, "test family");
  sim_power->add_flag("--conservative", conservative, "conservative tsep critical value");
  sim_power->add_option("--m", m, "first sample size");
  sim_power->add_option("--n", n, "second sample size");
  sim_power->add_option("--p", p, "trim level");
  sim_power->add_option("--alpha", alpha, "test level");
  sim_power->add_option("--reps", reps, "replicates per gamma");
  sim_power->add_option("--seed", seed, "RNG seed");
  sim_power->add_option("--gammas", gammas, "comma-separated gamma grid");

  auto* sim_hell = sim->add_subcommand("hellinger", "bias/MSE/coverage curves");
  sim_hell->fallthrough();
  sim_hell->add_option("--case", case_str, "scenario a-f")->required();
  sim_hell->add_option("--estimators", estimators, "comma-separated estimator list");
  sim_hell->add_option("--n-grid", n_grid, "comma-separated sample sizes");
  sim_hell->add_option("--reps", reps, "replicates per size");
  sim_hell->add_option("--ci-level", ci_level, "confidence level");
  sim_hell->add_option("--seed", seed, "RNG seed");
  sim_hell->add_option("--x", xpath, "case c: first sample CSV");
  sim_hell->add_option("--y", ypath, "case c: second sample CSV");

  auto* cv = app.add_subcommand("crossval", "cross-validated density risks");
  cv->fallthrough();
  cv->add_option("--input", input, "sample CSV")->required();
  cv->add_option("--methods", methods, "comma-separated method list");
  cv->add_option("--folds", folds, "folds (default 10)");
  cv->add_option("--seed", seed, "RNG seed");

  double pnd_p = 0.075;
  auto* pnd = app.add_subcommand("power-near-data", "power along the fitted mixture path");
  pnd->fallthrough();
  pnd->add_option("--x", xpath, "first sample CSV")->required();
  pnd->add_option("--y", ypath, "second sample CSV")->required();
  pnd->add_option("--stat", stat, "min-t|tsep|wrs");
  pnd->add_option("--family", family, "test family");
  pnd->add_option("--p", pnd_p, "trim level (default 0.075)");
  pnd->add_option("--alpha", alpha, "test level");
  pnd->add_option("--reps", reps, "replicates per gamma");
  pnd->add_option("--seed", seed, "RNG seed");
  pnd->add_option("--gammas", gammas, "comma-separated gamma grid");
  pnd->add_option("--projection-draws", proj_draws, "mixture draws per projection");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << json{{"error", e.what()}, {"code", 2}}.dump() << "\n";
    return 2;
  }

  try {
    if (case_str.size() != 1) throw input_error("case must be a single letter");
    const char case_id = case_str[0];
    if (density->parsed()) return cmd_density(input, family, eta, bw, static_cast<int>(grid), out);
    if (dom->parsed())
      return cmd_dominance(xpath, ypath, stat, family, p, alpha, conservative, out);
    if (hell->parsed()) return cmd_hellinger(xpath, ypath, family, ci_level, out);
    if (sim_power->parsed())
      return cmd_simulate_power(case_id, stat, family, conservative, m, n, p, alpha, reps, seed,
                                gammas, out);
    if (sim_hell->parsed())
      return cmd_simulate_hellinger(case_id, estimators, n_grid, reps, ci_level, seed, xpath,
                                    ypath, out);
    if (cv->parsed()) return cmd_crossval(input, methods, folds, seed, out);
    if (pnd->parsed())
      return cmd_power_near_data(xpath, ypath, stat, family, pnd_p, alpha, reps, seed, gammas,
                                 proj_draws, out);
    throw input_error("no subcommand");
  } catch (const input_error& e) {
    std::cerr << json{{"error", e.what()}, {"code", 2}}.dump() << "\n";
    return 2;
  } catch (const numerical_error& e) {
    std::cerr << json{{"error", e.what()}, {"code", 3}}.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}, {"code", 3}}.dump() << "\n";
    return 3;
  }
}

}  // namespace shapestat
