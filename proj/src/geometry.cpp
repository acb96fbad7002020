#include "secantforge/geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace secantforge::geometry {

namespace {

constexpr double kDriftTol = 1e-12;
constexpr double kSpanTol = 1e-9;

// Two-pass modified Gram-Schmidt re-orthonormalization, in place.
void reorthonormalize(std::vector<Vec>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < i; ++j) {
        vec::axpy(-vec::dot(basis[i], basis[j]), basis[j], basis[i]);
      }
    }
    const double n = vec::nrm2(basis[i]);
    if (n == 0.0) throw std::runtime_error("reorthonormalize: rank collapse");
    for (double& c : basis[i]) c /= n;
  }
}

}  // namespace

double SphereState::orthonormality_drift() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    worst = std::max(worst, std::abs(vec::nrm2_sq(basis[i]) - 1.0));
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      worst = std::max(worst, std::abs(vec::dot(basis[i], basis[j])));
    }
  }
  return worst;
}

bool SphereState::contains(const Vec& x, double tol) const {
  if (x.size() != center.size()) return false;
  const double d = vec::dist(x, center);
  if (std::abs(d - radius) > tol) return false;
  // out-of-span component of x - center
  Vec r = vec::sub(x, center);
  for (const Vec& b : basis) vec::axpy(-vec::dot(r, b), b, r);
  return vec::nrm2(r) <= tol;
}

std::vector<Vec> orthonormal_complement(const Vec& normal) {
  const std::size_t d = normal.size();
  const double n = vec::nrm2(normal);
  if (d < 1 || n == 0.0) {
    throw std::invalid_argument("orthonormal_complement: zero normal");
  }
  // Householder reflector H with H e0 = -sign(u0) u; columns 1..d-1 of H
  // form an exactly orthonormal basis of the complement of u.
  Vec w(d);
  for (std::size_t i = 0; i < d; ++i) w[i] = normal[i] / n;
  const double sign = w[0] >= 0.0 ? 1.0 : -1.0;
  w[0] += sign;
  const double wsq = vec::nrm2_sq(w);
  std::vector<Vec> basis;
  basis.reserve(d - 1);
  for (std::size_t j = 1; j < d; ++j) {
    Vec col(d, 0.0);
    col[j] = 1.0;
    vec::axpy(-2.0 * w[j] / wsq, w, col);
    basis.push_back(std::move(col));
  }
  return basis;
}

Vec project_affine(const Vec& x, const SphereState& s) {
  if (x.size() != s.center.size()) {
    throw std::invalid_argument("project_affine: dimension mismatch");
  }
  Vec h = s.center;
  for (const Vec& b : s.basis) {
    vec::axpy(vec::diff_dot(x, s.center, b), b, h);
  }
  return h;
}

SphereState slice(const SphereState& s, const Vec& v, double offset_ratio) {
  if (v.size() != s.center.size()) {
    throw std::invalid_argument("slice: dimension mismatch");
  }
  if (!(std::abs(offset_ratio) < 1.0)) {
    throw std::invalid_argument("slice: |offset_ratio| must be < 1");
  }
  if (s.basis.empty()) {
    throw std::invalid_argument("slice: sphere has no direction space left");
  }
  const std::size_t k = s.basis.size();

  // Coordinates of v in the basis; the remainder must be negligible.
  Vec coords(k);
  Vec in_span(v.size(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    coords[i] = vec::dot(v, s.basis[i]);
    vec::axpy(coords[i], s.basis[i], in_span);
  }
  const double out = vec::dist(v, in_span);
  if (out > kSpanTol) {
    throw std::invalid_argument("slice: v has a component outside span(basis)");
  }
  const double cn = vec::nrm2(coords);
  if (std::abs(cn - 1.0) > kSpanTol) {
    throw std::invalid_argument("slice: v must be a unit vector");
  }
  for (double& c : coords) c /= cn;

  SphereState out_state;
  out_state.level = s.level + 1;
  out_state.radius = s.radius * std::sqrt(1.0 - offset_ratio * offset_ratio);

  // center' = center - offset_ratio * radius * v, using the in-span part of v
  // so the new center stays inside the supporting subspace.
  out_state.center = s.center;
  for (std::size_t i = 0; i < k; ++i) {
    vec::axpy(-offset_ratio * s.radius * coords[i], s.basis[i], out_state.center);
  }

  // Basis of { b in span(basis) : b _|_ v }: take the Householder complement
  // of the coordinate vector and map it back through the current basis.
  std::vector<Vec> comp = orthonormal_complement(coords);
  out_state.basis.reserve(k - 1);
  for (const Vec& c : comp) {
    Vec b(s.center.size(), 0.0);
    for (std::size_t i = 0; i < k; ++i) vec::axpy(c[i], s.basis[i], b);
    out_state.basis.push_back(std::move(b));
  }
  if (out_state.orthonormality_drift() > kDriftTol) {
    reorthonormalize(out_state.basis);
  }
  return out_state;
}

Vec farthest_on_sphere(const SphereState& s, const Vec& x) {
  if (x.size() != s.center.size()) {
    throw std::invalid_argument("farthest_on_sphere: dimension mismatch");
  }
  if (s.basis.empty()) {
    throw std::invalid_argument("farthest_on_sphere: empty basis");
  }
  if (!(s.radius > 0.0)) {
    throw std::invalid_argument("farthest_on_sphere: radius must be positive");
  }
  const std::size_t k = s.basis.size();
  Vec coords(k);
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    coords[i] = vec::diff_dot(x, s.center, s.basis[i]);
    norm_sq += coords[i] * coords[i];
  }
  const double np = std::sqrt(norm_sq);
  Vec p = s.center;
  if (np < 1e-12 * s.radius) {
    vec::axpy(s.radius, s.basis[0], p);
    return p;
  }
  for (std::size_t i = 0; i < k; ++i) {
    vec::axpy(-s.radius * coords[i] / np, s.basis[i], p);
  }
  return p;
}

Vec sample_on_sphere(const SphereState& s, unsigned long long seed, int index) {
  if (s.basis.empty()) {
    throw std::invalid_argument("sample_on_sphere: empty basis");
  }
  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<unsigned long long>(index + 1));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec coords(s.basis.size());
  double nsq = 0.0;
  do {
    nsq = 0.0;
    for (double& c : coords) {
      c = gauss(rng);
      nsq += c * c;
    }
  } while (nsq == 0.0);
  const double inv = 1.0 / std::sqrt(nsq);
  Vec p = s.center;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    vec::axpy(s.radius * coords[i] * inv, s.basis[i], p);
  }
  return p;
}

}  // namespace secantforge::geometry
