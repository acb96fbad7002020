// AVX2+FMA kernel variants. This translation unit is the only one compiled
// with -mavx2 -mfma; callers reach it through the dispatch table.
#include "secantforge/vec_kernels.hpp"

#if defined(SECANTFORGE_HAVE_AVX2)
#include <immintrin.h>

namespace secantforge::vec {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  const std::size_t m = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < m; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  }
  double s = hsum(acc);
  for (std::size_t i = m; i < n; ++i) s += a[i] * b[i];
  return s;
}

double nrm2_sq_avx2(const double* a, std::size_t n) {
  const std::size_t m = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < m; i += 4) {
    const __m256d v = _mm256_loadu_pd(a + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (std::size_t i = m; i < n; ++i) s += a[i] * a[i];
  return s;
}

double dist_sq_avx2(const double* a, const double* b, std::size_t n) {
  const std::size_t m = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < m; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (std::size_t i = m; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double diff_dot_avx2(const double* a, const double* b, const double* c, std::size_t n) {
  const std::size_t m = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < m; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, _mm256_loadu_pd(c + i), acc);
  }
  double s = hsum(acc);
  for (std::size_t i = m; i < n; ++i) s += (a[i] - b[i]) * c[i];
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const std::size_t m = n & ~std::size_t{3};
  const __m256d va = _mm256_set1_pd(alpha);
  for (std::size_t i = 0; i < m; i += 4) {
    const __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, r);
  }
  for (std::size_t i = m; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const Kernels* avx2_kernels() {
  static const Kernels k{"avx2", dot_avx2, nrm2_sq_avx2, dist_sq_avx2,
                         diff_dot_avx2, axpy_avx2};
  return &k;
}

}  // namespace secantforge::vec

#else

namespace secantforge::vec {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace secantforge::vec

#endif
