#include "secantforge/core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace secantforge::core {

ClassParams::ClassParams(double mu_, double ell_) : mu(mu_), ell(ell_) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("ClassParams: mu must be a positive finite real");
  }
  if (!(ell >= mu) || !std::isfinite(ell)) {
    throw std::invalid_argument("ClassParams: requires ell >= mu > 0");
  }
}

ConditionResiduals residuals(const Vec& x, double f, const Vec& g, const Vec& xstar,
                             const ClassParams& params) {
  if (x.size() != g.size() || x.size() != xstar.size()) {
    throw std::invalid_argument("residuals: dimension mismatch");
  }
  const double d_sq = vec::dist_sq(x, xstar);
  const double d = std::sqrt(d_sq);
  const double inner = vec::diff_dot(x, xstar, g);  // <g, x - x*>
  const double gnorm = vec::nrm2(g);

  ConditionResiduals r{};
  r.rsi_residual = inner - params.mu * d_sq;
  r.eb_residual = params.ell * d - gnorm;
  r.value_residual = f - 0.25 * (params.mu + params.ell) * d_sq;
  if (d_sq > 0.0) {
    r.rsi_ratio = inner / d_sq;
    r.eb_ratio = gnorm / d;
    r.ratios_defined = true;
  } else {
    r.rsi_ratio = 0.0;
    r.eb_ratio = 0.0;
    r.ratios_defined = false;
  }
  return r;
}

ConditionResiduals residuals(const OraclePoint& p, const Vec& xstar,
                             const ClassParams& params) {
  return residuals(p.x, p.f, p.g, xstar, params);
}

double gd_rate(const ClassParams& params) {
  const double t = params.mu / params.ell;
  return 1.0 - t * t;
}

namespace {

void require_kappa_above_sqrt2(const ClassParams& params, const char* what) {
  // Strict: at kappa == sqrt(2) the constant degenerates to 1.
  if (!(params.ell / params.mu > std::numbers::sqrt2)) {
    throw std::domain_error(std::string(what) + ": requires L/mu > sqrt(2)");
  }
}

}  // namespace

double first_step_constant(const ClassParams& params) {
  require_kappa_above_sqrt2(params, "first_step_constant");
  const double l2 = params.ell * params.ell;
  return l2 / (2.0 * (l2 - params.mu * params.mu));
}

double break_even_steps(const ClassParams& params) {
  require_kappa_above_sqrt2(params, "break_even_steps");
  return -std::log(2.0) / std::log1p(-(params.mu * params.mu) / (params.ell * params.ell)) - 1.0;
}

bool FeasibleRegion::contains(const Vec& xstar, double tol) const {
  const double to_rsi = vec::dist(xstar, rsi_center);
  const double to_eb = vec::dist(xstar, eb_center);
  return to_rsi <= rsi_radius * (1.0 + tol) + tol &&
         to_eb >= eb_radius * (1.0 - tol) - tol;
}

FeasibleRegion feasible_region(const Vec& x0, const Vec& g0, const ClassParams& params) {
  if (x0.size() != g0.size()) {
    throw std::invalid_argument("feasible_region: dimension mismatch");
  }
  const double gnorm = vec::nrm2(g0);
  if (gnorm == 0.0) {
    throw std::invalid_argument("feasible_region: zero gradient");
  }
  FeasibleRegion region;
  region.rsi_center = vec::add_scaled(x0, -1.0 / (2.0 * params.mu), g0);
  region.rsi_radius = gnorm / (2.0 * params.mu);
  region.eb_center = x0;
  region.eb_radius = gnorm / params.ell;
  return region;
}

}  // namespace secantforge::core
