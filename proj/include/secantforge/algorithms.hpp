#pragma once

#include <string>
#include <vector>

#include "secantforge/core.hpp"

namespace secantforge::algorithms {

using core::ClassParams;
using core::OraclePoint;
using vec::Vec;

// A first-order method maps the full history of (iterate, value, gradient)
// triples to the next iterate. Iterates are free to leave the span of
// observed gradients; steps are deterministic in the history and parameters.

// x_{i+1} = x_i - alpha g_i
Vec gd_step(const std::vector<OraclePoint>& history, double alpha);

// Step 1/(2 mu) on the first iteration, mu/L^2 afterwards.
Vec gd_two_phase_step(const std::vector<OraclePoint>& history, const ClassParams& params);

// x_{n+1} = x_n - alpha g_n + beta (x_n - x_{n-1}); the momentum term is zero
// on the first step.
Vec heavy_ball_step(const std::vector<OraclePoint>& history, double alpha, double beta);

enum class MethodKind { kGd, kGd2, kHeavyBall };

struct Method {
  MethodKind kind = MethodKind::kGd;
  double alpha = 0.0;
  double beta = 0.0;
};

Method make_gd(double alpha);
Method make_gd2();
Method make_heavy_ball(double alpha, double beta);

// "gd" | "gd2" | "hb"
Method parse_method(const std::string& name, double alpha, double beta);
const char* method_name(MethodKind kind);

Vec next_iterate(const Method& method, const ClassParams& params,
                 const std::vector<OraclePoint>& history);

}  // namespace secantforge::algorithms
