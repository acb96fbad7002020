#include "secantforge/vec_kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace secantforge::vec {

bool cpu_has_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Kernels& pick_kernels() {
  const char* mode = std::getenv("SECANT_FORGE_SIMD");
  if (mode != nullptr && std::strcmp(mode, "scalar") == 0) return scalar_kernels();
  const Kernels* avx2 = avx2_kernels();
  if (avx2 != nullptr && cpu_has_avx2()) return *avx2;
  return scalar_kernels();
}

}  // namespace

const Kernels& active_kernels() {
  static const Kernels& k = pick_kernels();
  return k;
}

double dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  return active_kernels().dot(a.data(), b.data(), a.size());
}

double nrm2_sq(const Vec& a) { return active_kernels().nrm2_sq(a.data(), a.size()); }

double nrm2(const Vec& a) { return std::sqrt(nrm2_sq(a)); }

double dist_sq(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  return active_kernels().dist_sq(a.data(), b.data(), a.size());
}

double dist(const Vec& a, const Vec& b) { return std::sqrt(dist_sq(a, b)); }

double diff_dot(const Vec& a, const Vec& b, const Vec& c) {
  assert(a.size() == b.size() && a.size() == c.size());
  return active_kernels().diff_dot(a.data(), b.data(), c.data(), a.size());
}

void axpy(double alpha, const Vec& x, Vec& y) {
  assert(x.size() == y.size());
  active_kernels().axpy(alpha, x.data(), y.data(), x.size());
}

Vec sub(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec add_scaled(const Vec& a, double alpha, const Vec& b) {
  assert(a.size() == b.size());
  Vec r = a;
  axpy(alpha, b, r);
  return r;
}

Vec scaled(double alpha, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = alpha * a[i];
  return r;
}

}  // namespace secantforge::vec
