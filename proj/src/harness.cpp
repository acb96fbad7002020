#include "secantforge/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace secantforge::harness {

namespace {

constexpr double kBoundTol = 1e-9;

// Rate fit that tolerates degenerate records: an exactly-converged run (all
// distances zero past burn-in) contracts by 0, and a single usable step has
// no defined rate.
double fit_rate(const std::vector<double>& dist_sq, int burn_in) {
  int usable = 0;
  for (std::size_t i = static_cast<std::size_t>(std::max(burn_in, 0));
       i < dist_sq.size(); ++i) {
    if (dist_sq[i] > 0.0 && std::isfinite(dist_sq[i])) ++usable;
  }
  if (usable == 0) return 0.0;
  if (usable < 2) return std::numeric_limits<double>::quiet_NaN();
  return estimate_rate(dist_sq, burn_in);
}

bool is_plain_gd_optimal(const ClassParams& params, const Method& method) {
  if (method.kind != algorithms::MethodKind::kGd) return false;
  const double opt = params.mu / (params.ell * params.ell);
  return std::abs(method.alpha - opt) <= 1e-12 * opt;
}

// mu == L: any quadratic (mu/2)|x - x*|^2 realizes the (trivial) zero lower
// bound. Run the method against it honestly so the record still carries a
// meaningful trajectory.
RunRecord run_trivial_branch(const RunConfig& config) {
  RunRecord rec;
  rec.params = config.params;
  rec.dim = config.dim;
  rec.method = config.method;
  rec.steps = config.steps;
  rec.alpha0 = config.alpha0;
  rec.g0_seed = config.g0_seed;
  rec.trivial_branch = true;
  rec.upper_applicable = false;

  const double mu = config.params.mu;
  Vec xstar(config.dim, 0.0);
  xstar[0] = 1.0;
  rec.certified_xstar = xstar;

  Vec x0(config.dim, 0.0);
  auto eval = [&](const Vec& x) {
    const double dsq = vec::dist_sq(x, xstar);
    return OraclePoint{x, 0.5 * mu * dsq, vec::scaled(mu, vec::sub(x, xstar))};
  };
  std::vector<OraclePoint> history{eval(x0)};
  rec.g0_norm = vec::nrm2(history[0].g);
  rec.iterates.push_back(x0);
  rec.dist_sq.push_back(vec::dist_sq(x0, xstar));
  rec.radius_sq.push_back(0.0);
  rec.per_step_lower_sq.push_back(0.0);
  for (int i = 1; i <= config.steps; ++i) {
    Vec x = algorithms::next_iterate(config.method, config.params, history);
    if (!std::isfinite(vec::nrm2_sq(x)) ||
        vec::nrm2_sq(x) > kDivergenceLimit * kDivergenceLimit) {
      rec.diverged = true;
      rec.divergence_step = i;
      break;
    }
    rec.iterates.push_back(x);
    rec.dist_sq.push_back(vec::dist_sq(x, xstar));
    rec.radius_sq.push_back(0.0);
    rec.per_step_lower_sq.push_back(0.0);
    if (i < config.steps) history.push_back(eval(x));
  }
  rec.transcript = history;
  rec.rho_hat = rec.diverged ? std::numeric_limits<double>::infinity()
                             : fit_rate(rec.dist_sq, 1);
  return rec;
}

}  // namespace

double default_alpha0(const ClassParams& params, const Method& method) {
  const double lo = params.mu / (params.ell * params.ell);
  if (method.kind == algorithms::MethodKind::kGd2 &&
      params.ell * params.ell >= 2.0 * params.mu * params.mu) {
    return 1.0 / (2.0 * params.mu);
  }
  return lo;
}

RunRecord run_vs_adversary(const RunConfig& config) {
  if (config.steps < 1) {
    throw std::invalid_argument("run_vs_adversary: steps must be >= 1");
  }
  if (config.steps > static_cast<int>(config.dim) - 1) {
    throw std::invalid_argument("run_vs_adversary: steps must be <= dim-1");
  }
  if (config.params.mu == config.params.ell) {
    return run_trivial_branch(config);
  }

  RunRecord rec;
  rec.params = config.params;
  rec.dim = config.dim;
  rec.method = config.method;
  rec.steps = config.steps;
  rec.alpha0 = config.alpha0;
  rec.g0_seed = config.g0_seed;
  rec.upper_applicable = is_plain_gd_optimal(config.params, config.method);

  const Vec x0(config.dim, 0.0);
  const Vec g0 = adversary::default_g0(config.params, config.dim, config.alpha0,
                                       config.g0_seed);
  adversary::AdversarySession session(config.params, config.dim, x0, config.alpha0, g0);
  rec.g0_norm = session.g0_norm();

  std::vector<OraclePoint> history{session.transcript().front()};
  rec.iterates.push_back(x0);
  rec.radius_sq.push_back(session.sphere().radius * session.sphere().radius);
  rec.per_step_lower_sq.push_back(0.0);  // index 0 placeholder

  for (int i = 1; i <= config.steps; ++i) {
    Vec x = algorithms::next_iterate(config.method, config.params, history);
    const double reach_sq = vec::nrm2_sq(x);
    if (!std::isfinite(reach_sq) || reach_sq > kDivergenceLimit * kDivergenceLimit) {
      rec.diverged = true;
      rec.divergence_step = i;
      break;
    }
    // Antipodal lower bound against the sphere as it stood before this
    // query's answer shrinks it.
    const Vec antipode = geometry::farthest_on_sphere(session.sphere(), x);
    rec.per_step_lower_sq.push_back(vec::dist_sq(x, antipode));
    rec.iterates.push_back(std::move(x));
    if (i < config.steps) {
      const adversary::OracleAnswer ans = session.answer(rec.iterates.back());
      history.push_back(OraclePoint{rec.iterates.back(), ans.f, ans.g});
      rec.radius_sq.push_back(session.sphere().radius * session.sphere().radius);
    } else {
      // The final iterate is never queried; extend the radius recursion so
      // every distance has a bound to compare against.
      rec.radius_sq.push_back(rec.radius_sq.back() * core::gd_rate(config.params));
    }
  }

  rec.transcript = session.transcript();
  rec.certified_xstar = session.certify_minimizer(rec.iterates.back());

  rec.dist_sq.reserve(rec.iterates.size());
  for (const Vec& x : rec.iterates) {
    rec.dist_sq.push_back(vec::dist_sq(x, rec.certified_xstar));
  }

  for (std::size_t i = 0; i < rec.dist_sq.size(); ++i) {
    if (rec.dist_sq[i] < rec.radius_sq[i] * (1.0 - kBoundTol)) {
      rec.uniform_lower_ok = false;
    }
    if (i >= 1 && rec.per_step_lower_sq[i] < rec.radius_sq[i - 1] * (1.0 - kBoundTol)) {
      rec.per_step_lower_ok = false;
    }
  }
  if (rec.upper_applicable) {
    const double rate = core::gd_rate(config.params);
    double bound = rec.dist_sq.front();
    for (std::size_t i = 1; i < rec.dist_sq.size(); ++i) {
      bound *= rate;
      if (rec.dist_sq[i] > bound * (1.0 + kBoundTol)) rec.upper_ok = false;
    }
  }

  rec.rho_hat = rec.diverged ? std::numeric_limits<double>::infinity()
                             : fit_rate(rec.dist_sq, 1);
  return rec;
}

double estimate_rate(const std::vector<double>& dist_sq, int burn_in) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  bool any_positive = false;
  for (std::size_t i = static_cast<std::size_t>(std::max(burn_in, 0));
       i < dist_sq.size(); ++i) {
    const double d = dist_sq[i];
    if (!(d > 0.0) || !std::isfinite(d)) continue;
    any_positive = true;
    const double xi = static_cast<double>(i);
    const double yi = std::log(d);
    sx += xi;
    sy += yi;
    sxx += xi * xi;
    sxy += xi * yi;
    ++n;
  }
  if (!any_positive) {
    throw std::invalid_argument("estimate_rate: no positive distances to fit");
  }
  if (n < 2) {
    throw std::invalid_argument("estimate_rate: needs at least two usable steps");
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  return std::exp(slope);
}

double estimate_rate(const RunRecord& record, int burn_in) {
  return estimate_rate(record.dist_sq, burn_in);
}

namespace {

int sweep_thread_count(std::size_t cells) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SECANT_FORGE_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned long>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(std::min<std::size_t>(hw, cells));
}

}  // namespace

std::vector<SweepCell> sweep_heavy_ball(const ClassParams& params, std::size_t dim,
                                        int steps, const std::vector<double>& alpha_grid,
                                        const std::vector<double>& beta_grid) {
  if (alpha_grid.empty() || beta_grid.empty()) {
    throw std::invalid_argument("sweep_heavy_ball: grids must be nonempty");
  }
  const std::size_t total = alpha_grid.size() * beta_grid.size();
  std::vector<SweepCell> cells(total);

  const double alpha0 = params.mu / (params.ell * params.ell);
  auto run_cell = [&](std::size_t idx) {
    const double alpha = alpha_grid[idx / beta_grid.size()];
    const double beta = beta_grid[idx % beta_grid.size()];
    RunConfig cfg{params, dim, algorithms::make_heavy_ball(alpha, beta), steps, alpha0, 0};
    const RunRecord rec = run_vs_adversary(cfg);
    cells[idx] = SweepCell{alpha, beta, rec.rho_hat, rec.diverged,
                           rec.uniform_lower_ok && rec.per_step_lower_ok};
  };

  const int workers = sweep_thread_count(total);
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) run_cell(i);
    return cells;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
        run_cell(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  return cells;
}

TraceReport analyze_trace(const std::vector<std::pair<Vec, Vec>>& points, const Vec& xstar,
                          const std::optional<ClassParams>& params) {
  if (points.empty()) {
    throw std::invalid_argument("analyze_trace: empty trace");
  }
  TraceReport report;
  report.steps.reserve(points.size());
  report.mu_hat = std::numeric_limits<double>::infinity();
  report.ell_hat = 0.0;
  report.skipped = 0;
  for (const auto& [x, g] : points) {
    if (x.size() != xstar.size() || g.size() != xstar.size()) {
      throw std::invalid_argument("analyze_trace: dimension mismatch");
    }
    const double dsq = vec::dist_sq(x, xstar);
    if (dsq == 0.0) {
      report.steps.push_back(TraceStep{0.0, 0.0, true});
      ++report.skipped;
      continue;
    }
    TraceStep step;
    step.skipped = false;
    step.rsi = vec::diff_dot(x, xstar, g) / dsq;
    step.eb = vec::nrm2(g) / std::sqrt(dsq);
    report.mu_hat = std::min(report.mu_hat, step.rsi);
    report.ell_hat = std::max(report.ell_hat, step.eb);
    report.steps.push_back(step);
  }
  if (report.skipped == static_cast<int>(points.size())) {
    throw std::invalid_argument("analyze_trace: every step coincides with xstar");
  }
  report.kappa_hat = report.mu_hat > 0.0
                         ? report.ell_hat / report.mu_hat
                         : std::numeric_limits<double>::infinity();
  report.interpolable = report.mu_hat > 0.0;
  if (params.has_value()) {
    report.within_class = report.mu_hat >= params->mu * (1.0 - core::kFeasTol) &&
                          report.ell_hat <= params->ell * (1.0 + core::kFeasTol);
  }
  return report;
}

}  // namespace secantforge::harness
