#include "secantforge/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace secantforge::interpolation {

namespace {

void validate_family(const InterpFamily& family) {
  if (family.points.empty()) {
    throw std::invalid_argument("InterpFamily: empty family");
  }
  const std::size_t d = family.xstar.size();
  for (const InterpPoint& p : family.points) {
    if (p.x.size() != d || p.g.size() != d) {
      throw std::invalid_argument("InterpFamily: dimension mismatch");
    }
  }
  for (std::size_t i = 0; i < family.points.size(); ++i) {
    for (std::size_t j = i + 1; j < family.points.size(); ++j) {
      if (std::equal(family.points[i].x.begin(), family.points[i].x.end(),
                     family.points[j].x.begin())) {
        throw std::invalid_argument("InterpFamily: the x_i must be separate points");
      }
    }
  }
}

}  // namespace

CheckReport check_family(const InterpFamily& family, const ClassParams& params,
                         double tol) {
  validate_family(family);
  CheckReport report;
  report.feasible = true;
  report.values_consistent = true;
  report.first_infeasible = -1;
  report.points.reserve(family.points.size());
  for (std::size_t i = 0; i < family.points.size(); ++i) {
    const InterpPoint& p = family.points[i];
    const double f = p.f.value_or(0.0);
    CheckPointReport pr;
    pr.residuals = core::residuals(p.x, f, p.g, family.xstar, params);
    pr.feasible = pr.residuals.feasible(tol);
    if (!pr.residuals.ratios_defined) {
      // x_i == x*: both conditions collapse to g_i = 0.
      pr.feasible = vec::nrm2(p.g) <= tol;
    }
    pr.value_consistent =
        !p.f.has_value() || std::abs(pr.residuals.value_residual) <= tol;
    if (!pr.feasible && report.first_infeasible < 0) {
      report.first_infeasible = static_cast<int>(i);
    }
    report.feasible = report.feasible && pr.feasible;
    report.values_consistent = report.values_consistent && pr.value_consistent;
    report.points.push_back(pr);
  }
  return report;
}

const char* mode_name(InterpMode mode) {
  switch (mode) {
    case InterpMode::kMuEqualsL: return "mu-equals-L";
    case InterpMode::kAllMinimizers: return "all-minimizers";
    case InterpMode::kSinglePair: return "single-pair";
    case InterpMode::kGeneral: return "general";
  }
  return "unknown";
}

InterpConstants select_constants(const InterpFamily& family, const ClassParams& params) {
  validate_family(family);
  if (!(params.ell > params.mu)) {
    throw std::invalid_argument("select_constants: requires L > mu");
  }
  if (family.points.size() < 2) {
    throw std::invalid_argument("select_constants: requires at least two points");
  }
  const double mu = params.mu;
  const double ell = params.ell;

  double min_pair = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < family.points.size(); ++i) {
    for (std::size_t j = i + 1; j < family.points.size(); ++j) {
      min_pair = std::min(min_pair, vec::dist(family.points[i].x, family.points[j].x));
    }
  }
  double min_to_star = std::numeric_limits<double>::infinity();
  double max_dist = 0.0;
  for (const InterpPoint& p : family.points) {
    const double d = vec::dist(p.x, family.xstar);
    max_dist = std::max(max_dist, d);
    if (d > 0.0) min_to_star = std::min(min_to_star, d);
  }
  if (!std::isfinite(min_to_star) || min_to_star == 0.0) {
    throw std::invalid_argument("select_constants: no x_i distinct from x*");
  }

  const double pi = std::numbers::pi;
  InterpConstants k;
  k.eps0 = 0.5 * min_pair;
  k.eps1 = 0.5 * min_to_star;
  k.max_dist = max_dist;
  k.c0 = (pi * pi / 4.0 - pi * pi * pi * pi / 48.0) * (ell - mu) / 2.0 * k.eps1;
  k.c1 = mu + 3.0 * ell;
  k.c2 = (pi * pi / 2.0) * ((3.0 * ell + mu) / 2.0) * max_dist;
  k.m0 = 4.0 * (mu + ell) * max_dist + (ell + 3.0 * mu) * k.eps1;
  k.m1 = k.c2 * (max_dist + k.eps1);
  k.epsilon =
      0.5 * std::min({k.eps0, k.eps1, k.c0 / (2.0 * k.c1), k.c0 / (2.0 * k.m0)});
  k.beta = 0.5 * std::min({0.5, k.c0 / (2.0 * k.c2), k.c0 / (2.0 * k.m1)});
  return k;
}

double bump(double u, double epsilon, double beta) {
  const double t = std::pow(u / epsilon, beta);
  return 0.5 * (1.0 + std::cos(std::numbers::pi * t));
}

double bump_deriv_times_u(double u, double epsilon, double beta) {
  const double pi = std::numbers::pi;
  const double t = std::pow(u / epsilon, beta);
  return -0.5 * pi * beta * t * std::sin(pi * t);
}

InterpFunction make_interp_function(const InterpFamily& family, const ClassParams& params) {
  validate_family(family);
  InterpFunction fn;
  fn.family = family;
  fn.params = params;

  const double mu = params.mu;
  const double ell = params.ell;

  if (mu == ell) {
    // Interpolation forces g_i = mu (x_i - x*) exactly in this case.
    for (const InterpPoint& p : family.points) {
      const Vec expect = vec::scaled(mu, vec::sub(p.x, family.xstar));
      if (vec::dist(p.g, expect) > 1e-9 * std::max(1.0, vec::nrm2(expect))) {
        throw std::invalid_argument(
            "make_interp_function: mu == L requires g_i = mu (x_i - x*)");
      }
    }
    fn.mode = InterpMode::kMuEqualsL;
    return fn;
  }

  bool all_minimizers = true;
  for (const InterpPoint& p : family.points) {
    if (!std::equal(p.x.begin(), p.x.end(), family.xstar.begin())) {
      all_minimizers = false;
      break;
    }
  }
  if (all_minimizers) {
    fn.mode = InterpMode::kAllMinimizers;
    return fn;
  }
  if (family.points.size() == 1) {
    fn.mode = InterpMode::kSinglePair;
    return fn;
  }

  fn.mode = InterpMode::kGeneral;
  fn.constants = select_constants(family, params);
  fn.bump_dirs.reserve(family.points.size());
  for (const InterpPoint& p : family.points) {
    Vec q = p.g;
    vec::axpy(-0.5 * (mu + ell), vec::sub(p.x, family.xstar), q);
    fn.bump_dirs.push_back(std::move(q));
  }
  return fn;
}

std::pair<double, Vec> evaluate(const InterpFunction& fn, const Vec& x) {
  const double mu = fn.params.mu;
  const double ell = fn.params.ell;
  const Vec& xstar = fn.family.xstar;
  if (x.size() != xstar.size()) {
    throw std::invalid_argument("evaluate: dimension mismatch");
  }

  switch (fn.mode) {
    case InterpMode::kMuEqualsL:
    case InterpMode::kAllMinimizers: {
      const double dsq = vec::dist_sq(x, xstar);
      Vec g = vec::scaled(mu, vec::sub(x, xstar));
      return {0.5 * mu * dsq, std::move(g)};
    }
    case InterpMode::kSinglePair: {
      const InterpPoint& p = fn.family.points.front();
      const Vec diff = vec::sub(x, p.x);
      const double val = vec::dot(p.g, diff) + 0.25 * (mu + ell) * vec::nrm2_sq(diff);
      Vec g = p.g;
      vec::axpy(0.5 * (mu + ell), diff, g);
      return {val, std::move(g)};
    }
    case InterpMode::kGeneral:
      break;
  }

  const double quad = 0.25 * (mu + ell) * vec::dist_sq(x, xstar);
  Vec grad = vec::scaled(0.5 * (mu + ell), vec::sub(x, xstar));

  const double eps = fn.constants.epsilon;
  for (std::size_t i = 0; i < fn.family.points.size(); ++i) {
    const Vec& xi = fn.family.points[i].x;
    const double usq = vec::dist_sq(x, xi);
    if (usq >= eps * eps) continue;
    // The balls never intersect, so this is the only active one.
    const Vec& q = fn.bump_dirs[i];
    const double u = std::sqrt(usq);
    if (u < 1e-300) {
      // Analytic limit at the center: the bump contributes exactly q_i.
      return {quad, vec::add_scaled(grad, 1.0, q)};
    }
    const double lam = bump(u, eps, fn.constants.beta);
    const double lam_du = bump_deriv_times_u(u, eps, fn.constants.beta);
    const Vec w = vec::scaled(1.0 / u, vec::sub(x, xi));
    const double qw = vec::dot(q, w);
    const double val = quad + lam * u * qw;  // <q, x - x_i> = u <q, w>
    vec::axpy(lam, q, grad);
    vec::axpy(lam_du * qw, w, grad);
    return {val, std::move(grad)};
  }
  return {quad, std::move(grad)};
}

MembershipReport verify_membership(const InterpFunction& fn, int samples,
                                   unsigned long long seed) {
  const Vec& xstar = fn.family.xstar;
  const std::size_t d = xstar.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Radius fractions hugging both ends of (0, 1), plus random fill.
  static constexpr double kFractions[] = {1e-9, 1e-6, 1e-3, 0.01, 0.05, 0.1, 0.25,
                                          0.5,  0.75, 0.9,  0.99, 0.999, 1.0 - 1e-9};
  constexpr int kNumFractions = static_cast<int>(std::size(kFractions));

  MembershipReport report;
  report.min_rsi_residual = std::numeric_limits<double>::infinity();
  report.min_eb_residual = std::numeric_limits<double>::infinity();
  report.samples = samples;

  const bool has_balls = fn.mode == InterpMode::kGeneral;
  double outer_scale = 1.0;
  for (const InterpPoint& p : fn.family.points) {
    outer_scale = std::max(outer_scale, vec::dist(p.x, xstar));
  }

  Vec dir(d);
  for (int s = 0; s < samples; ++s) {
    Vec point;
    if (has_balls && s % 2 == 0) {
      // Inside the bump ball of one family point.
      const InterpPoint& p =
          fn.family.points[(s / 2) % fn.family.points.size()];
      double frac;
      const int k = s / 2 / static_cast<int>(fn.family.points.size());
      if (k < kNumFractions) {
        frac = kFractions[k];
      } else {
        frac = unif(rng);
        if (frac == 0.0) frac = 0.5;
      }
      double nsq = 0.0;
      for (double& c : dir) {
        c = gauss(rng);
        nsq += c * c;
      }
      if (nsq == 0.0) {
        dir[0] = 1.0;
        nsq = 1.0;
      }
      point = p.x;
      vec::axpy(frac * fn.constants.epsilon / std::sqrt(nsq), dir, point);
    } else {
      // Global sample around the minimizer, spanning well past the family.
      point = xstar;
      const double r = unif(rng) * 3.0 * outer_scale;
      double nsq = 0.0;
      for (double& c : dir) {
        c = gauss(rng);
        nsq += c * c;
      }
      if (nsq == 0.0) {
        dir[0] = 1.0;
        nsq = 1.0;
      }
      vec::axpy(r / std::sqrt(nsq), dir, point);
    }

    const auto [value, gradient] = evaluate(fn, point);
    (void)value;
    const double dsq = vec::dist_sq(point, xstar);
    const double rsi = vec::diff_dot(point, xstar, gradient) - fn.params.mu * dsq;
    const double eb = fn.params.ell * std::sqrt(dsq) - vec::nrm2(gradient);
    if (rsi < report.min_rsi_residual) {
      report.min_rsi_residual = rsi;
      report.worst_rsi_sample = point;
    }
    if (eb < report.min_eb_residual) {
      report.min_eb_residual = eb;
      report.worst_eb_sample = point;
    }
  }
  return report;
}

std::pair<double, double> lemma2_gap(const Vec& x, const Vec& x_i, const Vec& xstar,
                                     const Vec& xistar) {
  Vec lhs = vec::sub(x, xstar);
  vec::axpy(-1.0, vec::sub(x_i, xistar), lhs);
  return {vec::nrm2(lhs), 2.0 * vec::dist(x, x_i)};
}

}  // namespace secantforge::interpolation
