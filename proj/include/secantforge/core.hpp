#pragma once

#include <cstddef>

#include "secantforge/vec_kernels.hpp"

namespace secantforge::core {

using vec::Vec;

// Relative tolerance used when classifying points as feasible. All certified
// quantities are exact in exact arithmetic, so this only absorbs rounding.
inline constexpr double kFeasTol = 1e-9;

// Moduli (mu, L) of the function class: mu is the secant-inequality modulus,
// ell the error-bound modulus. Requires 0 < mu <= ell; the class has no
// nontrivial points when ell < mu.
struct ClassParams {
  double mu;
  double ell;

  ClassParams(double mu_, double ell_);

  double kappa() const { return ell / mu; }
};

// One first-order observation: iterate, function value, gradient.
struct OraclePoint {
  Vec x;
  double f;
  Vec g;
};

// Slack of the per-point membership conditions at (x, g) relative to a
// candidate minimizer xstar. Nonnegative rsi/eb residuals mean feasible.
struct ConditionResiduals {
  double rsi_residual;    // <g, x-x*> - mu*|x-x*|^2
  double eb_residual;     // L*|x-x*| - |g|
  double value_residual;  // f - (mu+L)/4*|x-x*|^2
  double rsi_ratio;       // <g, x-x*> / |x-x*|^2
  double eb_ratio;        // |g| / |x-x*|
  bool ratios_defined;    // false when x == x*

  bool feasible(double tol = kFeasTol) const {
    return rsi_residual >= -tol && eb_residual >= -tol;
  }
};

ConditionResiduals residuals(const Vec& x, double f, const Vec& g, const Vec& xstar,
                             const ClassParams& params);
ConditionResiduals residuals(const OraclePoint& p, const Vec& xstar,
                             const ClassParams& params);

// Per-step squared-distance contraction factor 1 - mu^2/L^2 of gradient
// descent with step mu/L^2.
double gd_rate(const ClassParams& params);

// Worst-case distance improvement c = L^2 / (2(L^2 - mu^2)) gained by taking
// the larger first step 1/(2 mu). Only meaningful for L/mu > sqrt(2).
double first_step_constant(const ClassParams& params);

// Number of steps n with (1 - mu^2/L^2)^(n+1) = 1/2, i.e. the step count
// needed to recover the first-step constant. Real-valued; callers round.
// Requires L/mu > sqrt(2).
double break_even_steps(const ClassParams& params);

// Region of minimizers consistent with observing gradient g0 at x0: a closed
// ball the minimizer must lie in, minus the open ball it must avoid.
struct FeasibleRegion {
  Vec rsi_center;
  double rsi_radius;
  Vec eb_center;
  double eb_radius;

  bool contains(const Vec& xstar, double tol = kFeasTol) const;
};

FeasibleRegion feasible_region(const Vec& x0, const Vec& g0, const ClassParams& params);

}  // namespace secantforge::core
