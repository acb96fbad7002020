#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "secantforge/geometry.hpp"

using namespace secantforge;
using geometry::SphereState;
using vec::Vec;

namespace {

Vec random_unit(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(d);
  double nsq = 0.0;
  do {
    nsq = 0.0;
    for (double& c : v) {
      c = gauss(rng);
      nsq += c * c;
    }
  } while (nsq == 0.0);
  const double inv = 1.0 / std::sqrt(nsq);
  for (double& c : v) c *= inv;
  return v;
}

SphereState fresh_sphere(std::size_t d, const Vec& center, double radius, const Vec& normal) {
  SphereState s;
  s.center = center;
  s.radius = radius;
  s.basis = geometry::orthonormal_complement(normal);
  s.level = 0;
  return s;
}

}  // namespace

TEST_CASE("orthonormal_complement is exactly orthonormal and orthogonal to the normal") {
  std::mt19937_64 rng(42);
  for (std::size_t d : {2u, 3u, 5u, 16u, 64u}) {
    const Vec n = random_unit(rng, d);
    const auto basis = geometry::orthonormal_complement(n);
    REQUIRE(basis.size() == d - 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      CHECK(std::abs(vec::nrm2(basis[i]) - 1.0) <= 1e-14);
      CHECK(std::abs(vec::dot(basis[i], n)) <= 1e-14);
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        CHECK(std::abs(vec::dot(basis[i], basis[j])) <= 1e-14);
      }
    }
  }
}

TEST_CASE("project_affine: axis-aligned case") {
  SphereState s;
  s.center = Vec{0.0, 0.0, 0.0};
  s.radius = 1.0;
  s.basis = {Vec{1.0, 0.0, 0.0}, Vec{0.0, 1.0, 0.0}};
  const Vec h = geometry::project_affine(Vec{2.0, 3.0, 7.0}, s);
  CHECK(h[0] == doctest::Approx(2.0));
  CHECK(h[1] == doctest::Approx(3.0));
  CHECK(h[2] == doctest::Approx(0.0));

  // A point already in the subspace projects to itself.
  const Vec inside{-1.5, 0.25, 0.0};
  const Vec h2 = geometry::project_affine(inside, s);
  CHECK(vec::dist(h2, inside) <= 1e-15);
}

TEST_CASE("project_affine: residual orthogonal to every basis vector") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 4;
    SphereState s = fresh_sphere(d, Vec{u(rng), u(rng), u(rng), u(rng)}, 2.0,
                                 random_unit(rng, d));
    Vec x(d);
    for (double& c : x) c = u(rng);
    const Vec h = geometry::project_affine(x, s);
    const Vec r = vec::sub(x, h);
    for (const Vec& b : s.basis) {
      CHECK(std::abs(vec::dot(r, b)) <= 1e-12);
    }
  }
}

TEST_CASE("slice: explicit low-dimensional case") {
  SphereState s;
  s.center = Vec{0.0, 0.0, 0.0, 0.0};
  s.radius = 1.0;
  s.basis = {Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}, Vec{0, 0, 1, 0}};
  const auto t = geometry::slice(s, Vec{1.0, 0.0, 0.0, 0.0}, 0.1);
  CHECK(t.level == 1);
  CHECK(t.center[0] == doctest::Approx(-0.1));
  CHECK(t.center[1] == doctest::Approx(0.0));
  CHECK(t.radius == doctest::Approx(std::sqrt(0.99)));
  REQUIRE(t.basis.size() == 2);
  for (const Vec& b : t.basis) {
    CHECK(std::abs(b[0]) <= 1e-14);
    CHECK(std::abs(b[3]) <= 1e-14);
  }
}

TEST_CASE("slice: zero offset keeps center and radius") {
  SphereState s;
  s.center = Vec{1.0, 2.0, 3.0};
  s.radius = 0.75;
  s.basis = geometry::orthonormal_complement(Vec{1.0, 1.0, 1.0});
  const Vec v = s.basis[0];
  const auto t = geometry::slice(s, v, 0.0);
  CHECK(vec::dist(t.center, s.center) <= 1e-15);
  CHECK(t.radius == doctest::Approx(0.75));
  CHECK(t.basis.size() == 1);
  CHECK(std::abs(vec::dot(t.basis[0], v)) <= 1e-13);
}

TEST_CASE("slice: sampled points stay on the parent sphere") {
  std::mt19937_64 rng(7777);
  const std::size_t d = 6;
  SphereState s = fresh_sphere(d, Vec(d, 0.5), 2.0, random_unit(rng, d));
  // random unit direction inside span(basis)
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(d, 0.0);
  for (const Vec& b : s.basis) vec::axpy(gauss(rng), b, v);
  const double vn = vec::nrm2(v);
  for (double& c : v) c /= vn;
  const auto t = geometry::slice(s, v, 0.37);
  for (int i = 0; i < 100; ++i) {
    const Vec p = geometry::sample_on_sphere(t, 555, i);
    CHECK(std::abs(vec::dist(p, s.center) - s.radius) <= 1e-10);
    CHECK(s.contains(p, 1e-10));
    CHECK(std::abs(vec::dist(p, t.center) - t.radius) <= 1e-12);
  }
}

TEST_CASE("slice: repeated slicing matches the closed-form radius") {
  std::mt19937_64 rng(31415);
  const std::size_t d = 16;
  SphereState s = fresh_sphere(d, Vec(d, 0.0), 3.0, random_unit(rng, d));
  const double ratio = 0.1;  // plays the role of mu/L
  const double r0 = s.radius;
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 1; i <= static_cast<int>(d) - 2; ++i) {
    Vec v(d, 0.0);
    for (const Vec& b : s.basis) vec::axpy(gauss(rng), b, v);
    const double vn = vec::nrm2(v);
    for (double& c : v) c /= vn;
    s = geometry::slice(s, v, ratio);
    const double expect = r0 * std::pow(1.0 - ratio * ratio, 0.5 * i);
    CHECK(std::abs(s.radius - expect) <= 1e-12 * expect);
    CHECK(s.orthonormality_drift() <= 1e-12);
    CHECK(static_cast<int>(s.basis.size()) == static_cast<int>(d) - 1 - i);
  }
}

TEST_CASE("slice: rejects bad inputs") {
  SphereState s;
  s.center = Vec{0.0, 0.0, 0.0};
  s.radius = 1.0;
  s.basis = geometry::orthonormal_complement(Vec{0.0, 0.0, 1.0});
  // v outside span(basis)
  CHECK_THROWS_AS(geometry::slice(s, Vec{0.0, 0.0, 1.0}, 0.1), std::invalid_argument);
  // |offset_ratio| >= 1
  CHECK_THROWS_AS(geometry::slice(s, s.basis[0], 1.0), std::invalid_argument);
  // not unit length
  CHECK_THROWS_AS(geometry::slice(s, vec::scaled(0.5, s.basis[0]), 0.1),
                  std::invalid_argument);
}

TEST_CASE("farthest_on_sphere: antipodal point") {
  SphereState s;
  s.center = Vec{0.0, 0.0, 0.0};
  s.radius = 1.0;
  s.basis = {Vec{1, 0, 0}, Vec{0, 1, 0}};
  const Vec p = geometry::farthest_on_sphere(s, Vec{3.0, 0.0, 0.0});
  CHECK(p[0] == doctest::Approx(-1.0));
  CHECK(p[1] == doctest::Approx(0.0));
  CHECK(p[2] == doctest::Approx(0.0));
}

TEST_CASE("farthest_on_sphere: degenerate branch when x has no in-span component") {
  SphereState s;
  s.center = Vec{0.0, 0.0, 0.0};
  s.radius = 1.0;
  s.basis = {Vec{1, 0, 0}, Vec{0, 1, 0}};
  const Vec p = geometry::farthest_on_sphere(s, Vec{0.0, 0.0, 5.0});
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(0.0));
}

TEST_CASE("farthest_on_sphere beats random sphere samples") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const std::size_t d = 5;
  SphereState s = fresh_sphere(d, Vec(d, -0.25), 1.6, random_unit(rng, d));
  for (int trial = 0; trial < 20; ++trial) {
    Vec x(d);
    for (double& c : x) c = u(rng);
    const Vec far = geometry::farthest_on_sphere(s, x);
    CHECK(std::abs(vec::dist(far, s.center) - s.radius) <= 1e-10);
    CHECK(s.contains(far, 1e-10));
    const double best = vec::dist(x, far);
    for (int i = 0; i < 1000; ++i) {
      const Vec p = geometry::sample_on_sphere(s, 8080 + trial, i);
      CHECK(vec::dist(x, p) <= best * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("farthest_on_sphere: two-point sphere picks the farther point") {
  SphereState s;
  s.center = Vec{0.0, 0.0, 0.0};
  s.radius = 2.0;
  s.basis = {Vec{0, 1, 0}};
  const Vec p = geometry::farthest_on_sphere(s, Vec{0.0, 1.5, 0.0});
  CHECK(p[1] == doctest::Approx(-2.0));
  SphereState empty;
  empty.center = Vec{0.0};
  empty.radius = 1.0;
  CHECK_THROWS_AS(geometry::farthest_on_sphere(empty, Vec{0.0}), std::invalid_argument);
}
