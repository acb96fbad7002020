#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "secantforge/core.hpp"

namespace secantforge::interpolation {

using core::ClassParams;
using core::ConditionResiduals;
using vec::Vec;

struct InterpPoint {
  Vec x;
  Vec g;
  std::optional<double> f;
};

// A finite family of first-order observations plus a candidate singleton
// minimizer. The x_i must be pairwise distinct.
struct InterpFamily {
  std::vector<InterpPoint> points;
  Vec xstar;
};

struct CheckPointReport {
  ConditionResiduals residuals;
  bool feasible;
  bool value_consistent;  // true when no f was provided
};

struct CheckReport {
  bool feasible;           // every point passes the gradient conditions within tol
  bool values_consistent;  // every provided f matches (mu+L)/4 |x-x*|^2 within tol
  int first_infeasible;    // index of the first failing point, -1 if none
  std::vector<CheckPointReport> points;
};

// Per-point membership check against the fixed singleton minimizer. The
// conditions are independent across points: the family is interpolable iff
// each point is.
CheckReport check_family(const InterpFamily& family, const ClassParams& params,
                         double tol = core::kFeasTol);

enum class InterpMode { kMuEqualsL, kAllMinimizers, kSinglePair, kGeneral };

const char* mode_name(InterpMode mode);

struct InterpConstants {
  double eps0;      // half the minimum pairwise distance between the x_i
  double eps1;      // half the minimum distance |x_i - x*| over x_i != x*
  double c0;
  double c1;
  double c2;
  double m0;
  double m1;
  double max_dist;  // max_i |x_i - x*|
  double epsilon;   // chosen bump radius
  double beta;      // chosen bump exponent, in (0, 1/2)
};

// Constants and (epsilon, beta) for the general-mode construction. The
// ceilings are sufficient rather than tight, and a further safety factor of
// 1/2 absorbs floating-point slack. Requires L > mu, at least two points and
// some x_i != x*.
InterpConstants select_constants(const InterpFamily& family, const ClassParams& params);

// The bump profile (1 + cos(pi (u/eps)^beta)) / 2 and its derivative scaled
// by u (the combination that stays bounded as u -> 0).
double bump(double u, double epsilon, double beta);
double bump_deriv_times_u(double u, double epsilon, double beta);

// Explicit interpolating function: a global quadratic centered on x*,
// perturbed inside non-overlapping balls around the x_i so that the gradient
// at each x_i is exactly g_i.
struct InterpFunction {
  InterpFamily family;
  ClassParams params{1.0, 1.0};
  InterpMode mode = InterpMode::kGeneral;
  InterpConstants constants{};  // meaningful in general mode only
  std::vector<Vec> bump_dirs;   // q_i = g_i - (mu+L)/2 (x_i - x*), general mode
};

// Selects the construction mode (mu == L quadratic, all-minimizers quadratic,
// single-pair strongly-convex quadratic, or the general bump construction)
// and precomputes its data. Throws when mu == L but some g_i != mu (x_i - x*).
InterpFunction make_interp_function(const InterpFamily& family, const ClassParams& params);

// Value and gradient at x. Total on R^d; the gradient at exactly x_i uses the
// analytic limit g_i.
std::pair<double, Vec> evaluate(const InterpFunction& fn, const Vec& x);

struct MembershipReport {
  double min_rsi_residual;
  double min_eb_residual;
  Vec worst_rsi_sample;
  Vec worst_eb_sample;
  int samples;

  bool feasible(double tol = core::kFeasTol) const {
    return min_rsi_residual >= -tol && min_eb_residual >= -tol;
  }
};

// Samples the membership conditions at `samples` points stratified inside and
// outside the bump balls (including radius fractions near 0 and 1).
MembershipReport verify_membership(const InterpFunction& fn, int samples,
                                   unsigned long long seed);

// Projection-difference inequality data: lhs = |x - x* - (x_i - x_i*)|,
// rhs = 2 |x - x_i|. When x*, x_i* are projections of x, x_i onto a common
// convex set, lhs <= rhs.
std::pair<double, double> lemma2_gap(const Vec& x, const Vec& x_i, const Vec& xstar,
                                     const Vec& xistar);

}  // namespace secantforge::interpolation
