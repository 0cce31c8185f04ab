// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include "simd/kernels_avx2.hpp"

namespace rsdfo::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

// Four columns per pass so each chunk of v is loaded once per block.
void gemv_t(const double* q, std::size_t rows, std::size_t cols, std::size_t ld, const double* v,
            double* out) {
  std::size_t j = 0;
  for (; j + 4 <= cols; j += 4) {
    const double* c0 = q + j * ld;
    const double* c1 = c0 + ld;
    const double* c2 = c1 + ld;
    const double* c3 = c2 + ld;
    __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
    __m256d a2 = _mm256_setzero_pd(), a3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= rows; i += 4) {
      const __m256d vv = _mm256_loadu_pd(v + i);
      a0 = _mm256_fmadd_pd(_mm256_loadu_pd(c0 + i), vv, a0);
      a1 = _mm256_fmadd_pd(_mm256_loadu_pd(c1 + i), vv, a1);
      a2 = _mm256_fmadd_pd(_mm256_loadu_pd(c2 + i), vv, a2);
      a3 = _mm256_fmadd_pd(_mm256_loadu_pd(c3 + i), vv, a3);
    }
    double s0 = hsum(a0), s1 = hsum(a1), s2 = hsum(a2), s3 = hsum(a3);
    for (; i < rows; ++i) {
      s0 += c0[i] * v[i];
      s1 += c1[i] * v[i];
      s2 += c2[i] * v[i];
      s3 += c3[i] * v[i];
    }
    out[j] = s0;
    out[j + 1] = s1;
    out[j + 2] = s2;
    out[j + 3] = s3;
  }
  for (; j < cols; ++j) out[j] = dot(q + j * ld, v, rows);
}

void gemv_n(const double* q, std::size_t rows, std::size_t cols, std::size_t ld, const double* c,
            double* y) {
  std::size_t j = 0;
  for (; j + 4 <= cols; j += 4) {
    const double* c0 = q + j * ld;
    const double* c1 = c0 + ld;
    const double* c2 = c1 + ld;
    const double* c3 = c2 + ld;
    const __m256d w0 = _mm256_set1_pd(c[j]), w1 = _mm256_set1_pd(c[j + 1]);
    const __m256d w2 = _mm256_set1_pd(c[j + 2]), w3 = _mm256_set1_pd(c[j + 3]);
    std::size_t i = 0;
    for (; i + 4 <= rows; i += 4) {
      __m256d acc = _mm256_loadu_pd(y + i);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(c0 + i), w0, acc);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(c1 + i), w1, acc);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(c2 + i), w2, acc);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(c3 + i), w3, acc);
      _mm256_storeu_pd(y + i, acc);
    }
    for (; i < rows; ++i) {
      y[i] += c0[i] * c[j] + c1[i] * c[j + 1] + c2[i] * c[j + 2] + c3[i] * c[j + 3];
    }
  }
  for (; j < cols; ++j) axpy(c[j], q + j * ld, y, rows);
}

}  // namespace rsdfo::simd::avx2
