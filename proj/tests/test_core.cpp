#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "secantforge/core.hpp"

using namespace secantforge;
using core::ClassParams;
using vec::Vec;

TEST_CASE("ClassParams validation") {
  CHECK_NOTHROW(ClassParams(0.1, 1.0));
  CHECK_NOTHROW(ClassParams(1.0, 1.0));
  CHECK_THROWS_AS(ClassParams(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ClassParams(-0.1, 1.0), std::invalid_argument);
  // The class is empty of nontrivial points for L < mu; rejected.
  CHECK_THROWS_AS(ClassParams(1.0, 0.5), std::invalid_argument);
  CHECK(ClassParams(0.1, 1.0).kappa() == doctest::Approx(10.0));
}

TEST_CASE("residuals: boundary-feasible point") {
  const ClassParams params(0.1, 1.0);
  const Vec x{1.0, 0.0}, xstar{0.0, 0.0};
  const auto r = core::residuals(x, 1.1 / 4.0, Vec{0.1, 0.0}, xstar, params);
  // Tight on the secant inequality and the value identity; the gradient-norm
  // condition has slack 1 - 0.1.
  CHECK(r.rsi_residual == doctest::Approx(0.0));
  CHECK(r.value_residual == doctest::Approx(0.0));
  CHECK(r.eb_residual == doctest::Approx(0.9));
  CHECK(r.rsi_ratio == doctest::Approx(0.1));
  CHECK(r.eb_ratio == doctest::Approx(0.1));
  CHECK(r.ratios_defined);
  CHECK(r.feasible());
}

TEST_CASE("residuals: infeasible points") {
  const ClassParams params(0.1, 1.0);
  const Vec x{1.0, 0.0}, xstar{0.0, 0.0};
  SUBCASE("gradient too large") {
    const auto r = core::residuals(x, 0.0, Vec{0.0, 2.0}, xstar, params);
    CHECK(r.eb_residual == doctest::Approx(-1.0));
    CHECK_FALSE(r.feasible());
  }
  SUBCASE("secant inner product too small") {
    const auto r = core::residuals(x, 0.0, Vec{0.05, 0.0}, xstar, params);
    CHECK(r.rsi_residual == doctest::Approx(-0.05));
    CHECK_FALSE(r.feasible());
  }
}

TEST_CASE("residuals: x == xstar flags undefined ratios") {
  const ClassParams params(0.1, 1.0);
  const Vec x{1.0, 2.0};
  const auto r = core::residuals(x, 0.0, Vec{0.0, 0.0}, x, params);
  CHECK_FALSE(r.ratios_defined);
  CHECK(r.rsi_residual == 0.0);
  CHECK(r.eb_residual == 0.0);
}

TEST_CASE("residuals: dimension mismatch") {
  const ClassParams params(0.1, 1.0);
  CHECK_THROWS_AS(core::residuals(Vec{1.0, 0.0}, 0.0, Vec{1.0}, Vec{0.0, 0.0}, params),
                  std::invalid_argument);
}

TEST_CASE("gd_rate") {
  CHECK(core::gd_rate(ClassParams(0.1, 1.0)) == doctest::Approx(0.99));
  CHECK(core::gd_rate(ClassParams(2.0, 2.0)) == doctest::Approx(0.0));
  CHECK(core::gd_rate(ClassParams(1.0, 10.0)) == doctest::Approx(0.99));
}

TEST_CASE("gd_rate: range and monotonicity in mu") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double ell = u(rng);
    std::uniform_real_distribution<double> um(0.001, ell);
    const double mu1 = um(rng);
    const double mu2 = um(rng);
    const double lo = std::min(mu1, mu2), hi = std::max(mu1, mu2);
    const double r_lo = core::gd_rate(ClassParams(lo, ell));
    const double r_hi = core::gd_rate(ClassParams(hi, ell));
    CHECK(r_lo >= 0.0);
    CHECK(r_lo < 1.0);
    CHECK(r_hi <= r_lo);
  }
}

TEST_CASE("first_step_constant") {
  CHECK(core::first_step_constant(ClassParams(1.0, 10.0)) ==
        doctest::Approx(100.0 / 198.0).epsilon(1e-12));
  CHECK(core::first_step_constant(ClassParams(1.0, 100.0)) ==
        doctest::Approx(10000.0 / 19998.0).epsilon(1e-12));
  // kappa == sqrt(2) is the boundary where the constant degenerates to 1;
  // the operation requires strict inequality.
  CHECK_THROWS_AS(core::first_step_constant(ClassParams(1.0, std::sqrt(2.0))),
                  std::domain_error);
  CHECK_THROWS_AS(core::first_step_constant(ClassParams(1.0, 1.2)), std::domain_error);
}

TEST_CASE("break_even_steps against the closed form") {
  // Independent oracle: n solves (1 - mu^2/L^2)^(n+1) = 1/2.
  CHECK(core::break_even_steps(ClassParams(1.0, 10.0)) ==
        doctest::Approx(67.96756393652842).epsilon(1e-12));
  CHECK(core::break_even_steps(ClassParams(1.0, 100.0)) ==
        doctest::Approx(6930.125226233421).epsilon(1e-12));
  CHECK(core::break_even_steps(ClassParams(1.0, 2.0)) ==
        doctest::Approx(1.409420839653209).epsilon(1e-12));
  CHECK_THROWS_AS(core::break_even_steps(ClassParams(1.0, 1.0)), std::domain_error);
}

TEST_CASE("break_even_steps halves the squared-distance bound") {
  for (double kappa : {1.5, 2.0, 5.0, 10.0, 100.0}) {
    const ClassParams params(1.0, kappa);
    const double n = core::break_even_steps(params);
    const double rate = core::gd_rate(params);
    CHECK(std::abs(std::pow(rate, n + 1.0) - 0.5) <= 1e-9);
  }
  // At extreme conditioning the identity degrades only through the rounding
  // of the rate itself (n ~ 7e7 amplifies one ulp of log(rate)).
  const double n = core::break_even_steps(ClassParams(1.0, 1e4));
  CHECK(std::abs(std::pow(core::gd_rate(ClassParams(1.0, 1e4)), n + 1.0) - 0.5) <= 1e-8);
}

TEST_CASE("feasible_region: circle geometry") {
  const ClassParams params(0.1, 1.0);
  const Vec x0{0.0, 0.0};
  const Vec g0{1.0, 0.0};
  const auto region = core::feasible_region(x0, g0, params);
  CHECK(region.rsi_center[0] == doctest::Approx(-5.0));
  CHECK(region.rsi_center[1] == doctest::Approx(0.0));
  CHECK(region.rsi_radius == doctest::Approx(5.0));
  CHECK(region.eb_center[0] == doctest::Approx(0.0));
  CHECK(region.eb_radius == doctest::Approx(1.0));

  // On the far boundary of the secant ball, outside the error-bound ball.
  CHECK(region.contains(Vec{-10.0, 0.0}));
  // Inside the excluded ball.
  CHECK_FALSE(region.contains(Vec{-0.5, 0.0}));

  CHECK_THROWS_AS(core::feasible_region(x0, Vec{0.0, 0.0}, params), std::invalid_argument);
}

TEST_CASE("feasible_region agrees with the residual characterization") {
  // Random (x, g, x*): the residual test and the two-ball membership test
  // must give the same verdict (away from the boundary, where rounding can
  // flip either one).
  const ClassParams params(0.1, 1.0);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int checked = 0;
  for (int trial = 0; trial < 100000; ++trial) {
    const Vec x{u(rng), u(rng), u(rng)};
    const Vec g{u(rng), u(rng), u(rng)};
    const Vec xstar{u(rng), u(rng), u(rng)};
    if (vec::nrm2(g) < 1e-12) continue;
    const auto r = core::residuals(x, 0.0, g, xstar, params);
    if (!r.ratios_defined) continue;
    const auto region = core::feasible_region(x, g, params);
    // Skip points within rounding distance of either boundary.
    const double margin = 1e-9 * (1.0 + vec::nrm2_sq(vec::sub(x, xstar)));
    if (std::abs(r.rsi_residual) < margin || std::abs(r.eb_residual) < margin) continue;
    ++checked;
    CHECK(r.feasible() == region.contains(xstar));
  }
  CHECK(checked > 50000);
}
