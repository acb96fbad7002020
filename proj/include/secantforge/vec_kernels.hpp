#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace secantforge::vec {

using Vec = std::vector<double>;

// Table of the dense inner-loop kernels everything else is built on.
// Two implementations exist: a scalar reference and an AVX2+FMA variant.
// The active table is picked once at startup from CPUID (overridable via
// the SECANT_FORGE_SIMD environment variable: "scalar", "avx2", "auto").
struct Kernels {
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*nrm2_sq)(const double* a, std::size_t n);
  double (*dist_sq)(const double* a, const double* b, std::size_t n);
  // <a - b, c>
  double (*diff_dot)(const double* a, const double* b, const double* c, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

const Kernels& scalar_kernels();
// nullptr when the binary was built without AVX2 support.
const Kernels* avx2_kernels();

bool cpu_has_avx2();
const Kernels& active_kernels();

// Convenience wrappers over the active kernel table. Sizes must agree.
double dot(const Vec& a, const Vec& b);
double nrm2_sq(const Vec& a);
double nrm2(const Vec& a);
double dist_sq(const Vec& a, const Vec& b);
double dist(const Vec& a, const Vec& b);
double diff_dot(const Vec& a, const Vec& b, const Vec& c);
void axpy(double alpha, const Vec& x, Vec& y);

Vec sub(const Vec& a, const Vec& b);
Vec add_scaled(const Vec& a, double alpha, const Vec& b);
Vec scaled(double alpha, const Vec& a);

}  // namespace secantforge::vec
