#include "secantforge/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace secantforge::adversary {

namespace {

bool same_point(const Vec& a, const Vec& b) {
  // Coordinate-exact on purpose: the repeat branch exists for algorithms that
  // literally revisit a point; nearby-but-distinct queries must stay distinct.
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

AdversarySession::AdversarySession(const ClassParams& params, std::size_t dim,
                                   const Vec& x0, double alpha0, const Vec& g0)
    : params_(params), alpha0_(alpha0), dim_(dim), query_count_(0) {
  if (dim < 3) {
    throw std::invalid_argument("AdversarySession: requires dim >= 3");
  }
  if (!(params.ell > params.mu)) {
    throw std::invalid_argument(
        "AdversarySession: requires L > mu (for L == mu the bounds are trivial)");
  }
  if (x0.size() != dim || g0.size() != dim) {
    throw std::invalid_argument("AdversarySession: dimension mismatch");
  }
  g0_norm_ = vec::nrm2(g0);
  if (g0_norm_ == 0.0) {
    throw std::invalid_argument("AdversarySession: g0 must be non-zero");
  }
  const double lo = params.mu / (params.ell * params.ell);
  const double hi = std::max(lo, 1.0 / (2.0 * params.mu));
  const double slack = 1e-12;
  if (!(alpha0 >= lo * (1.0 - slack) && alpha0 <= hi * (1.0 + slack))) {
    throw std::invalid_argument(
        "AdversarySession: alpha0 outside [mu/L^2, max(mu/L^2, 1/(2mu))]");
  }

  sphere_.center = vec::add_scaled(x0, -alpha0, g0);
  sphere_.radius = std::sqrt(alpha0 / params.mu - alpha0 * alpha0) * g0_norm_;
  sphere_.basis = geometry::orthonormal_complement(g0);
  sphere_.level = 0;

  const double f0 =
      (params.mu + params.ell) / (4.0 * params.mu) * alpha0 * g0_norm_ * g0_norm_;
  transcript_.push_back(OraclePoint{x0, f0, g0});
  query_count_ = 1;
}

OracleAnswer AdversarySession::answer(const Vec& x_next) {
  if (budget_exhausted()) {
    throw std::runtime_error("AdversarySession: query budget of dim-1 answers exhausted");
  }
  if (x_next.size() != dim_) {
    throw std::invalid_argument("AdversarySession: dimension mismatch");
  }

  const double ratio = params_.mu / params_.ell;

  for (const OraclePoint& p : transcript_) {
    if (same_point(p.x, x_next)) {
      // Cached answer; the sphere still shrinks by slicing along b_0.
      sphere_ = geometry::slice(sphere_, sphere_.basis[0], ratio);
      transcript_.push_back(OraclePoint{x_next, p.f, p.g});
      ++query_count_;
      return OracleAnswer{p.f, p.g};
    }
  }

  const Vec h = geometry::project_affine(x_next, sphere_);
  const Vec delta = vec::sub(h, sphere_.center);
  const double dn = vec::nrm2(delta);
  Vec v;
  if (dn < 1e-12 * std::max(sphere_.radius, 1.0)) {
    v = sphere_.basis[0];
  } else {
    v = vec::scaled(1.0 / dn, delta);
  }
  sphere_ = geometry::slice(sphere_, v, ratio);

  const Vec w = vec::sub(x_next, sphere_.center);
  const double wn = vec::nrm2(w);
  // wn >= (mu/L) * r_i > 0 by construction for non-repeated iterates.
  const double dist_star = std::sqrt(wn * wn + sphere_.radius * sphere_.radius);
  const double f = 0.25 * (params_.mu + params_.ell) * dist_star * dist_star;
  const Vec g = vec::scaled(params_.ell * dist_star / wn, w);

  transcript_.push_back(OraclePoint{x_next, f, g});
  ++query_count_;
  return OracleAnswer{f, g};
}

Vec AdversarySession::certify_minimizer(const Vec& x_query) const {
  if (transcript_.empty()) {
    throw std::runtime_error("AdversarySession: empty transcript");
  }
  return geometry::farthest_on_sphere(sphere_, x_query);
}

std::vector<OraclePoint> AdversarySession::unique_transcript() const {
  std::vector<OraclePoint> out;
  out.reserve(transcript_.size());
  for (const OraclePoint& p : transcript_) {
    bool dup = false;
    for (const OraclePoint& q : out) {
      if (same_point(p.x, q.x)) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

Vec default_g0(const ClassParams& params, std::size_t dim, double alpha0,
               unsigned long long seed) {
  const double norm = std::sqrt(params.mu / alpha0);
  Vec g0(dim, 0.0);
  if (seed == 0) {
    g0[0] = norm;
    return g0;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double nsq = 0.0;
  do {
    nsq = 0.0;
    for (double& c : g0) {
      c = gauss(rng);
      nsq += c * c;
    }
  } while (nsq == 0.0);
  const double scale = norm / std::sqrt(nsq);
  for (double& c : g0) c *= scale;
  return g0;
}

}  // namespace secantforge::adversary
