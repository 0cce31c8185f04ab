#include "rsdfo/simd/kernels.hpp"

namespace rsdfo::simd::scalar {

// Four independent accumulators; same association as the AVX2 lanes would
// give for a 4-wide reduction, which keeps the two variants close.
double dot(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_t(const double* q, std::size_t rows, std::size_t cols, std::size_t ld, const double* v,
            double* out) {
  for (std::size_t j = 0; j < cols; ++j) out[j] = dot(q + j * ld, v, rows);
}

void gemv_n(const double* q, std::size_t rows, std::size_t cols, std::size_t ld, const double* c,
            double* y) {
  for (std::size_t j = 0; j < cols; ++j) axpy(c[j], q + j * ld, y, rows);
}

}  // namespace rsdfo::simd::scalar
