#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "secantforge/adversary.hpp"
#include "secantforge/algorithms.hpp"
#include "secantforge/core.hpp"

namespace secantforge::harness {

using algorithms::Method;
using core::ClassParams;
using core::OraclePoint;
using vec::Vec;

// Iterates past this distance from the start flag the run as diverged; the
// record is truncated there instead of erroring (sweeps visit such tunings on
// purpose).
inline constexpr double kDivergenceLimit = 1e150;

struct RunConfig {
  ClassParams params;
  std::size_t dim;
  Method method;
  int steps;                     // number of method steps; requires steps <= dim-1
  double alpha0;                 // adversary first-step constant
  unsigned long long g0_seed = 0;
};

// Natural alpha0 for a method: 1/(2 mu) for two-phase (when L/mu >= sqrt(2)),
// mu/L^2 otherwise.
double default_alpha0(const ClassParams& params, const Method& method);

struct RunRecord {
  // config echo
  ClassParams params{1.0, 1.0};
  std::size_t dim = 0;
  Method method;
  int steps = 0;
  double alpha0 = 0.0;
  unsigned long long g0_seed = 0;

  bool trivial_branch = false;  // mu == L: the lower bounds are trivially zero

  std::vector<OraclePoint> transcript;  // answered queries, in order
  std::vector<Vec> iterates;            // x_0 .. x_last (includes the final, unanswered one)
  Vec certified_xstar;
  double g0_norm = 0.0;

  std::vector<double> dist_sq;            // |x_i - x*|^2 per iterate
  std::vector<double> radius_sq;          // r_i^2; the final entry extends the recursion
  std::vector<double> per_step_lower_sq;  // farthest-on-previous-sphere distance^2, i >= 1

  bool upper_applicable = false;  // plain GD with alpha = mu/L^2
  bool upper_ok = true;
  bool uniform_lower_ok = true;
  bool per_step_lower_ok = true;

  bool diverged = false;
  int divergence_step = -1;
  double rho_hat = 0.0;
};

// Runs the method against a fresh resisting-oracle session from the origin,
// certifies a minimizer, and checks the contraction upper bound and both
// lower-bound readings (a single certified minimizer for the whole run, and
// the per-step antipodal bound).
RunRecord run_vs_adversary(const RunConfig& config);

// Least-squares slope of log(dist_sq) against the step index, exponentiated.
// Entries before burn_in and non-positive entries are ignored.
double estimate_rate(const std::vector<double>& dist_sq, int burn_in);
double estimate_rate(const RunRecord& record, int burn_in = 1);

struct SweepCell {
  double alpha;
  double beta;
  double rho_hat;  // +infinity for diverged cells
  bool diverged;
  // The exact sequence bounds (certified minimizer and per-step antipode)
  // held throughout the run. rho_hat is only a fit and carries transient
  // noise; this flag carries the actual guarantee.
  bool bounds_ok;
};

// Heavy-ball grid sweep, one fresh adversary session per cell. The recorded
// rates are adversarial lower bounds on the worst case: the true worst-case
// rate of a tuning can only be worse or equal, so every non-diverged cell
// sits at or above 1 - mu^2/L^2 up to fit noise. Cells run in parallel; the
// SECANT_FORGE_THREADS environment variable caps the worker count.
std::vector<SweepCell> sweep_heavy_ball(const ClassParams& params, std::size_t dim,
                                        int steps, const std::vector<double>& alpha_grid,
                                        const std::vector<double>& beta_grid);

struct TraceStep {
  double rsi;  // <g_i, x_i - x*> / |x_i - x*|^2
  double eb;   // |g_i| / |x_i - x*|
  bool skipped;
};

struct TraceReport {
  std::vector<TraceStep> steps;
  double mu_hat;     // min RSI over reported steps
  double ell_hat;    // max EB over reported steps
  double kappa_hat;  // ell_hat / mu_hat
  bool interpolable; // mu_hat > 0
  int skipped;       // steps with x_i == x*
  // Set when reference moduli were supplied: mu_hat >= mu and ell_hat <= L
  // within the feasibility tolerance.
  std::optional<bool> within_class;
};

// Per-step secant/error-bound ratios of a recorded (x, g) trace against a
// fixed reference minimizer.
TraceReport analyze_trace(const std::vector<std::pair<Vec, Vec>>& points, const Vec& xstar,
                          const std::optional<ClassParams>& params = std::nullopt);

}  // namespace secantforge::harness
