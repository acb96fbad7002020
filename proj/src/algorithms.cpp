#include "secantforge/algorithms.hpp"

#include <stdexcept>

namespace secantforge::algorithms {

Vec gd_step(const std::vector<OraclePoint>& history, double alpha) {
  if (history.empty()) throw std::invalid_argument("gd_step: empty history");
  const OraclePoint& last = history.back();
  return vec::add_scaled(last.x, -alpha, last.g);
}

Vec gd_two_phase_step(const std::vector<OraclePoint>& history, const ClassParams& params) {
  if (history.empty()) throw std::invalid_argument("gd_two_phase_step: empty history");
  const double alpha = history.size() == 1
                           ? 1.0 / (2.0 * params.mu)
                           : params.mu / (params.ell * params.ell);
  return gd_step(history, alpha);
}

Vec heavy_ball_step(const std::vector<OraclePoint>& history, double alpha, double beta) {
  if (history.empty()) throw std::invalid_argument("heavy_ball_step: empty history");
  const OraclePoint& last = history.back();
  Vec next = vec::add_scaled(last.x, -alpha, last.g);
  if (history.size() >= 2) {
    const Vec& prev = history[history.size() - 2].x;
    vec::axpy(beta, last.x, next);
    vec::axpy(-beta, prev, next);
  }
  return next;
}

Method make_gd(double alpha) { return Method{MethodKind::kGd, alpha, 0.0}; }
Method make_gd2() { return Method{MethodKind::kGd2, 0.0, 0.0}; }
Method make_heavy_ball(double alpha, double beta) {
  return Method{MethodKind::kHeavyBall, alpha, beta};
}

Method parse_method(const std::string& name, double alpha, double beta) {
  if (name == "gd") return make_gd(alpha);
  if (name == "gd2") return make_gd2();
  if (name == "hb") return make_heavy_ball(alpha, beta);
  throw std::invalid_argument("unknown method '" + name + "' (expected gd, gd2 or hb)");
}

const char* method_name(MethodKind kind) {
  switch (kind) {
    case MethodKind::kGd: return "gd";
    case MethodKind::kGd2: return "gd2";
    case MethodKind::kHeavyBall: return "hb";
  }
  return "unknown";
}

Vec next_iterate(const Method& method, const ClassParams& params,
                 const std::vector<OraclePoint>& history) {
  switch (method.kind) {
    case MethodKind::kGd: return gd_step(history, method.alpha);
    case MethodKind::kGd2: return gd_two_phase_step(history, params);
    case MethodKind::kHeavyBall: return heavy_ball_step(history, method.alpha, method.beta);
  }
  throw std::logic_error("next_iterate: bad method kind");
}

}  // namespace secantforge::algorithms
