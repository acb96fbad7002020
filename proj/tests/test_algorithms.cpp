#include <doctest.h>

#include <random>
#include <stdexcept>

#include "secantforge/algorithms.hpp"

using namespace secantforge;
using algorithms::Method;
using core::ClassParams;
using core::OraclePoint;
using vec::Vec;

TEST_CASE("gd_step") {
  std::vector<OraclePoint> history{{{1.0, 0.0}, 0.5, {1.0, 0.0}}};
  const Vec next = algorithms::gd_step(history, 0.1);
  CHECK(next[0] == doctest::Approx(0.9));
  CHECK(next[1] == doctest::Approx(0.0));
  const Vec same = algorithms::gd_step(history, 0.0);
  CHECK(vec::dist(same, history[0].x) == 0.0);
  CHECK_THROWS_AS(algorithms::gd_step({}, 0.1), std::invalid_argument);
}

TEST_CASE("gd_two_phase_step switches step size after the first iteration") {
  const ClassParams params(0.1, 1.0);
  std::vector<OraclePoint> history{{{1.0, 0.0}, 0.5, {1.0, 0.0}}};
  // first step: alpha = 1/(2 mu) = 5
  Vec next = algorithms::gd_two_phase_step(history, params);
  CHECK(next[0] == doctest::Approx(1.0 - 5.0));
  history.push_back({next, 0.1, {0.5, 0.0}});
  // later steps: alpha = mu/L^2 = 0.1
  next = algorithms::gd_two_phase_step(history, params);
  CHECK(next[0] == doctest::Approx(-4.0 - 0.05));
}

TEST_CASE("heavy_ball_step") {
  std::vector<OraclePoint> history{{{2.0, 0.0}, 0.0, {1.0, 0.0}}};
  // Momentum is zero on the first step.
  Vec next = algorithms::heavy_ball_step(history, 0.1, 0.9);
  CHECK(next[0] == doctest::Approx(1.9));
  history.push_back({{1.0, 0.0}, 0.0, {1.0, 0.0}});
  next = algorithms::heavy_ball_step(history, 0.1, 0.5);
  // x - alpha g + beta (x - x_prev) = 1 - 0.1 - 0.5 = 0.4
  CHECK(next[0] == doctest::Approx(0.4));
}

TEST_CASE("heavy ball with beta = 0 is gradient descent") {
  const ClassParams params(0.1, 1.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<OraclePoint> history;
  for (int i = 0; i < 6; ++i) {
    history.push_back({{u(rng), u(rng), u(rng)}, u(rng), {u(rng), u(rng), u(rng)}});
    const Vec hb = algorithms::heavy_ball_step(history, 0.07, 0.0);
    const Vec gd = algorithms::gd_step(history, 0.07);
    CHECK(vec::dist(hb, gd) == 0.0);
  }
}

TEST_CASE("determinism: identical histories give bit-identical iterates") {
  std::vector<OraclePoint> history{{{0.3, -0.7}, 0.1, {0.2, 0.9}},
                                   {{0.1, -0.2}, 0.05, {-0.4, 0.3}}};
  const Vec a = algorithms::heavy_ball_step(history, 0.123, 0.456);
  const Vec b = algorithms::heavy_ball_step(history, 0.123, 0.456);
  CHECK(a == b);
}

TEST_CASE("method parsing and dispatch") {
  const ClassParams params(0.1, 1.0);
  CHECK(algorithms::parse_method("gd", 0.1, 0.0).kind == algorithms::MethodKind::kGd);
  CHECK(algorithms::parse_method("gd2", 0.0, 0.0).kind == algorithms::MethodKind::kGd2);
  CHECK(algorithms::parse_method("hb", 0.1, 0.5).kind == algorithms::MethodKind::kHeavyBall);
  CHECK_THROWS_AS(algorithms::parse_method("adam", 0.1, 0.0), std::invalid_argument);

  std::vector<OraclePoint> history{{{1.0, 0.0}, 0.5, {1.0, 0.0}}};
  const Method gd = algorithms::make_gd(0.1);
  CHECK(vec::dist(algorithms::next_iterate(gd, params, history),
                  algorithms::gd_step(history, 0.1)) == 0.0);
}
