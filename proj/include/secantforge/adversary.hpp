#pragma once

#include <cstddef>
#include <vector>

#include "secantforge/core.hpp"
#include "secantforge/geometry.hpp"

namespace secantforge::adversary {

using core::ClassParams;
using core::OraclePoint;
using vec::Vec;

struct OracleAnswer {
  double f;
  Vec g;
};

// Resisting first-order oracle. Every answer keeps the full transcript
// interpolable by some function of the class whose unique minimizer may still
// be any point of the current sphere; the sphere shrinks by the fixed factor
// sqrt(1 - mu^2/L^2) per answer and loses one direction of its supporting
// affine subspace.
//
// A session is a strictly sequential state machine: answers depend on query
// order. Sessions are independent of each other.
class AdversarySession {
 public:
  // Answers the query at x0 immediately (the result is transcript()[0]).
  // Requires dim >= 3, L > mu, g0 != 0 and
  // alpha0 in [mu/L^2, max(mu/L^2, 1/(2 mu))].
  AdversarySession(const ClassParams& params, std::size_t dim, const Vec& x0,
                   double alpha0, const Vec& g0);

  // Answer the query at x_next. A query equal (coordinate-exact) to a previous
  // iterate returns the cached answer; the sphere still shrinks by the
  // deterministic convention. Refuses once the budget of dim-1 total answers
  // is exhausted.
  OracleAnswer answer(const Vec& x_next);

  // A minimizer certificate: the sphere point farthest from x_query. Every
  // transcript entry is feasible and value-consistent for the returned point.
  Vec certify_minimizer(const Vec& x_query) const;

  const ClassParams& params() const { return params_; }
  double alpha0() const { return alpha0_; }
  std::size_t dim() const { return dim_; }
  double g0_norm() const { return g0_norm_; }
  int query_count() const { return query_count_; }
  bool budget_exhausted() const { return query_count_ >= static_cast<int>(dim_) - 1; }
  const geometry::SphereState& sphere() const { return sphere_; }
  const std::vector<OraclePoint>& transcript() const { return transcript_; }

  // Transcript with coordinate-exact repeated queries removed (first
  // occurrence kept), in query order.
  std::vector<OraclePoint> unique_transcript() const;

 private:
  ClassParams params_;
  double alpha0_;
  std::size_t dim_;
  geometry::SphereState sphere_;
  std::vector<OraclePoint> transcript_;
  double g0_norm_;
  int query_count_;
};

// Canonical first answer direction: |g0| = sqrt(mu/alpha0) makes the initial
// distance to every still-consistent minimizer exactly 1. seed == 0 gives the
// first coordinate axis, otherwise a seeded random unit direction.
Vec default_g0(const ClassParams& params, std::size_t dim, double alpha0,
               unsigned long long seed);

}  // namespace secantforge::adversary
