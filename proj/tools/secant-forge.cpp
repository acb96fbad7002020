// Command-line front end: worst-case experiment harness, family checking and
// building, and trace analysis. Emits plot-ready CSV plus flat JSON summaries.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "secantforge/harness.hpp"
#include "secantforge/io.hpp"

using json = nlohmann::json;
using namespace secantforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfigError = 2;

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
};

// "a:b:n" -> n points linearly spaced over [a, b]
GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &g.lo, &g.hi, &g.count) != 3 ||
      g.count < 1 || !(g.hi >= g.lo)) {
    throw std::invalid_argument("grid must be 'lo:hi:count' with count >= 1 and hi >= lo");
  }
  return g;
}

std::vector<double> expand_grid(const GridSpec& g) {
  std::vector<double> pts;
  pts.reserve(g.count);
  if (g.count == 1) {
    pts.push_back(g.lo);
    return pts;
  }
  for (int i = 0; i < g.count; ++i) {
    pts.push_back(g.lo + (g.hi - g.lo) * static_cast<double>(i) /
                             static_cast<double>(g.count - 1));
  }
  return pts;
}

json vec_to_json(const vec::Vec& v) {
  json arr = json::array();
  for (double c : v) arr.push_back(c);
  return arr;
}

void write_json(const std::string& path, const json& j) {
  io::write_file_atomic(path, j.dump(2) + "\n");
}

struct CommonOpts {
  double mu = 0.1;
  double ell = 1.0;
  std::size_t dim = 64;
  int steps = -1;  // default dim-1
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double beta = 0.0;
  double alpha0 = std::numeric_limits<double>::quiet_NaN();
  std::string method = "gd";
  unsigned long long seed = 0;
  std::string out = "secant-forge";
  double tol = 1e-9;
};

harness::RunConfig make_run_config(const CommonOpts& opts) {
  const core::ClassParams params(opts.mu, opts.ell);
  const double default_alpha = params.mu / (params.ell * params.ell);
  const double alpha = std::isnan(opts.alpha) ? default_alpha : opts.alpha;
  const algorithms::Method method = algorithms::parse_method(opts.method, alpha, opts.beta);
  const int steps = opts.steps < 0 ? static_cast<int>(opts.dim) - 1 : opts.steps;
  if (steps > static_cast<int>(opts.dim) - 1) {
    throw std::invalid_argument("steps must be <= dim-1");
  }
  double alpha0 = opts.alpha0;
  if (std::isnan(alpha0)) alpha0 = harness::default_alpha0(params, method);
  return harness::RunConfig{params, opts.dim, method, steps, alpha0, opts.seed};
}

interpolation::InterpFamily family_from_record(const harness::RunRecord& rec) {
  interpolation::InterpFamily family;
  family.xstar = rec.certified_xstar;
  for (const core::OraclePoint& p : rec.transcript) {
    bool dup = false;
    for (const interpolation::InterpPoint& q : family.points) {
      if (std::equal(p.x.begin(), p.x.end(), q.x.begin())) {
        dup = true;
        break;
      }
    }
    if (!dup) family.points.push_back({p.x, p.g, p.f});
  }
  return family;
}

int cmd_run(const CommonOpts& opts) {
  const harness::RunConfig cfg = make_run_config(opts);
  const harness::RunRecord rec = harness::run_vs_adversary(cfg);

  io::write_file_atomic(opts.out + ".run.csv", io::run_to_csv(rec));
  io::write_file_atomic(opts.out + ".transcript.csv", io::transcript_to_csv(rec));
  // Family layout with the certified minimizer, ready for `check` and `trace`.
  io::write_family_csv(opts.out + ".family.csv", family_from_record(rec));

  json summary;
  summary["method"] = algorithms::method_name(rec.method.kind);
  summary["mu"] = rec.params.mu;
  summary["L"] = rec.params.ell;
  summary["dim"] = rec.dim;
  summary["steps"] = rec.steps;
  summary["alpha0"] = rec.alpha0;
  summary["g0_norm"] = rec.g0_norm;
  summary["trivial_branch"] = rec.trivial_branch;
  summary["diverged"] = rec.diverged;
  summary["rho_hat"] = std::isfinite(rec.rho_hat)
                           ? json(rec.rho_hat)
                           : json(std::isnan(rec.rho_hat) ? "nan" : "inf");
  summary["upper_applicable"] = rec.upper_applicable;
  summary["upper_ok"] = rec.upper_ok;
  summary["uniform_lower_ok"] = rec.uniform_lower_ok;
  summary["per_step_lower_ok"] = rec.per_step_lower_ok;
  summary["certified_xstar"] = vec_to_json(rec.certified_xstar);
  if (rec.trivial_branch) {
    summary["notice"] = "mu == L: lower bounds are trivially zero; ran the quadratic";
  }
  write_json(opts.out + ".summary.json", summary);

  const bool ok = rec.uniform_lower_ok && rec.per_step_lower_ok &&
                  (!rec.upper_applicable || rec.upper_ok);
  std::cout << summary.dump(2) << "\n";
  return ok ? kExitOk : kExitViolation;
}

int cmd_sweep(const CommonOpts& opts, const GridSpec& alpha_grid, const GridSpec& beta_grid) {
  const core::ClassParams params(opts.mu, opts.ell);
  const int steps = opts.steps < 0 ? static_cast<int>(opts.dim) - 1 : opts.steps;
  if (steps > static_cast<int>(opts.dim) - 1) {
    throw std::invalid_argument("steps must be <= dim-1");
  }
  const auto cells = harness::sweep_heavy_ball(params, opts.dim, steps,
                                               expand_grid(alpha_grid),
                                               expand_grid(beta_grid));
  io::write_file_atomic(opts.out + ".sweep.csv", io::sweep_to_csv(cells));

  const harness::SweepCell* best = nullptr;
  for (const auto& c : cells) {
    if (c.diverged) continue;
    if (best == nullptr || c.rho_hat < best->rho_hat) best = &c;
  }
  json summary;
  if (best != nullptr) {
    summary["argmin_alpha"] = best->alpha;
    summary["argmin_beta"] = best->beta;
    summary["min_rho"] = best->rho_hat;
  } else {
    summary["argmin_alpha"] = nullptr;
    summary["argmin_beta"] = nullptr;
    summary["min_rho"] = "inf";
  }
  summary["cells"] = cells.size();
  write_json(opts.out + ".sweep.json", summary);
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

int cmd_check(const std::string& family_path, const CommonOpts& opts) {
  const auto family = io::read_family_csv(family_path);
  const core::ClassParams params(opts.mu, opts.ell);
  const auto report = interpolation::check_family(family, params, opts.tol);

  json j;
  j["feasible"] = report.feasible;
  j["values_consistent"] = report.values_consistent;
  j["offending_index"] = report.first_infeasible;
  json pts = json::array();
  for (const auto& p : report.points) {
    json q;
    q["rsi_residual"] = p.residuals.rsi_residual;
    q["eb_residual"] = p.residuals.eb_residual;
    q["value_residual"] = p.residuals.value_residual;
    q["rsi_ratio"] = p.residuals.rsi_ratio;
    q["eb_ratio"] = p.residuals.eb_ratio;
    q["ratios_defined"] = p.residuals.ratios_defined;
    q["feasible"] = p.feasible;
    pts.push_back(q);
  }
  j["points"] = pts;
  write_json(opts.out + ".check.json", j);
  std::cout << j.dump(2) << "\n";
  return report.feasible ? kExitOk : kExitViolation;
}

int cmd_build(const std::string& family_path, const CommonOpts& opts, int samples) {
  const auto family = io::read_family_csv(family_path);
  const core::ClassParams params(opts.mu, opts.ell);
  const auto check = interpolation::check_family(family, params, opts.tol);
  if (!check.feasible) {
    json j;
    j["feasible"] = false;
    j["offending_index"] = check.first_infeasible;
    std::cout << j.dump(2) << "\n";
    return kExitViolation;
  }
  const auto fn = interpolation::make_interp_function(family, params);
  const auto report = interpolation::verify_membership(fn, samples, opts.seed);

  double max_grad_err = 0.0;
  for (const auto& p : family.points) {
    const auto [value, gradient] = interpolation::evaluate(fn, p.x);
    (void)value;
    max_grad_err = std::max(max_grad_err, vec::dist(gradient, p.g));
  }

  json j;
  j["feasible"] = true;
  j["mode"] = interpolation::mode_name(fn.mode);
  if (fn.mode == interpolation::InterpMode::kGeneral) {
    j["epsilon"] = fn.constants.epsilon;
    j["beta"] = fn.constants.beta;
    j["eps0"] = fn.constants.eps0;
    j["eps1"] = fn.constants.eps1;
    j["C0"] = fn.constants.c0;
    j["C1"] = fn.constants.c1;
    j["C2"] = fn.constants.c2;
    j["M0"] = fn.constants.m0;
    j["M1"] = fn.constants.m1;
  }
  j["samples"] = report.samples;
  j["seed"] = opts.seed;
  j["min_rsi_residual"] = report.min_rsi_residual;
  j["min_eb_residual"] = report.min_eb_residual;
  j["max_gradient_interp_error"] = max_grad_err;
  j["membership_ok"] = report.feasible(opts.tol);
  write_json(opts.out + ".build.json", j);
  std::cout << j.dump(2) << "\n";
  return report.feasible(opts.tol) ? kExitOk : kExitViolation;
}

int cmd_trace(const std::string& trace_path, const CommonOpts& opts, bool have_params) {
  const auto family = io::read_family_csv(trace_path);
  std::optional<core::ClassParams> params;
  if (have_params) params = core::ClassParams(opts.mu, opts.ell);
  const auto report = harness::analyze_trace(io::family_points(family), family.xstar, params);

  io::write_file_atomic(opts.out + ".trace.csv", io::trace_report_to_csv(report));
  json j;
  j["mu_hat"] = report.mu_hat;
  j["L_hat"] = report.ell_hat;
  j["kappa_hat"] = std::isfinite(report.kappa_hat) ? json(report.kappa_hat) : json("inf");
  j["interpolable"] = report.interpolable;
  j["skipped"] = report.skipped;
  if (report.within_class.has_value()) j["within_class"] = *report.within_class;
  write_json(opts.out + ".trace.json", j);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"worst-case analysis toolkit for secant-inequality/error-bound classes"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string alpha_grid_text = "0.02:0.2:21";
  std::string beta_grid_text = "0:0.9:21";
  std::string family_path;
  int samples = 10000;

  auto add_class_opts = [&](CLI::App* cmd) {
    cmd->add_option("--mu", opts.mu, "secant-inequality modulus")->capture_default_str();
    cmd->add_option("--L", opts.ell, "error-bound modulus")->capture_default_str();
    cmd->add_option("--tol", opts.tol, "feasibility tolerance")->capture_default_str();
    cmd->add_option("--out", opts.out, "output path prefix")->capture_default_str();
    cmd->add_option("--seed", opts.seed, "RNG seed (0 = deterministic direction)")
        ->capture_default_str();
  };

  CLI::App* run = app.add_subcommand("run", "run a method against the resisting oracle");
  add_class_opts(run);
  run->add_option("--dim", opts.dim, "ambient dimension")->capture_default_str();
  run->add_option("--steps", opts.steps, "method steps (default dim-1)");
  run->add_option("--method", opts.method, "gd | gd2 | hb")->capture_default_str();
  run->add_option("--alpha", opts.alpha, "step size (default mu/L^2)");
  run->add_option("--beta", opts.beta, "momentum")->capture_default_str();
  run->add_option("--alpha0", opts.alpha0, "oracle first-step constant (default per method)");

  CLI::App* sweep = app.add_subcommand("sweep", "heavy-ball (alpha, beta) grid sweep");
  add_class_opts(sweep);
  sweep->add_option("--dim", opts.dim, "ambient dimension")->capture_default_str();
  sweep->add_option("--steps", opts.steps, "method steps (default dim-1)");
  sweep->add_option("--alpha-grid", alpha_grid_text, "alpha grid lo:hi:count")
      ->capture_default_str();
  sweep->add_option("--beta-grid", beta_grid_text, "beta grid lo:hi:count")
      ->capture_default_str();

  CLI::App* check = app.add_subcommand("check", "check a family file for interpolability");
  add_class_opts(check);
  check->add_option("family", family_path, "family CSV path")->required();

  CLI::App* build = app.add_subcommand("build", "build and sample the interpolating function");
  add_class_opts(build);
  build->add_option("family", family_path, "family CSV path")->required();
  build->add_option("--samples", samples, "membership samples")->capture_default_str();

  CLI::App* trace = app.add_subcommand("trace", "per-step secant/error-bound ratios");
  add_class_opts(trace);
  trace->add_option("trace", family_path, "trace CSV path (family layout)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(opts);
    if (sweep->parsed()) {
      return cmd_sweep(opts, parse_grid(alpha_grid_text), parse_grid(beta_grid_text));
    }
    if (check->parsed()) return cmd_check(family_path, opts);
    if (build->parsed()) return cmd_build(family_path, opts, samples);
    if (trace->parsed()) {
      const bool have_params = trace->count("--mu") > 0 || trace->count("--L") > 0;
      return cmd_trace(family_path, opts, have_params);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
