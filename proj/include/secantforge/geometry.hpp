#pragma once

#include <cstddef>
#include <vector>

#include "secantforge/vec_kernels.hpp"

namespace secantforge::geometry {

using vec::Vec;

// A sphere living inside an affine subspace of R^d: the set
//   { center + radius * u : u unit vector in span(basis) },
// where basis is an orthonormal set spanning the direction space of the
// supporting affine subspace. After `level` nested cuts the basis holds
// d - level - 1 vectors.
struct SphereState {
  Vec center;
  double radius = 0.0;
  std::vector<Vec> basis;
  int level = 0;

  std::size_t dim() const { return center.size(); }
  std::size_t subspace_dim() const { return basis.size(); }

  // Max pairwise |<b_i, b_j>| and unit-norm deviation of the basis.
  double orthonormality_drift() const;

  // Membership predicate: |x - center| == radius and x - center in span(basis),
  // both within tol.
  bool contains(const Vec& x, double tol) const;
};

// Orthonormal basis of the hyperplane orthogonal to `normal` (d-1 vectors),
// built from a Householder reflector mapping e0 onto the normal direction.
std::vector<Vec> orthonormal_complement(const Vec& normal);

// Orthogonal projection of x onto the sphere's supporting affine subspace:
// center + sum_k <x - center, b_k> b_k.
Vec project_affine(const Vec& x, const SphereState& s);

// Cut the sphere by the hyperplane { <y - center, v> = -offset_ratio * radius }
// inside its supporting subspace. v must be a unit vector in span(basis) and
// |offset_ratio| < 1. The result has
//   center' = center - offset_ratio * radius * v,
//   radius' = radius * sqrt(1 - offset_ratio^2),
//   basis'  = orthonormal basis of { b in span(basis) : b  |  b _|_ v },
//   level'  = level + 1.
SphereState slice(const SphereState& s, const Vec& v, double offset_ratio);

// Point of the sphere farthest from x: center - radius * u with u the
// normalized in-span component of x - center. Falls back to
// center + radius * b_0 when that component vanishes (any sphere point is
// farthest then, up to ties).
Vec farthest_on_sphere(const SphereState& s, const Vec& x);

// Uniform random point on the sphere (for sampling oracles in tests and
// membership reports). Deterministic in the generator state.
Vec sample_on_sphere(const SphereState& s, unsigned long long seed, int index);

}  // namespace secantforge::geometry
