#pragma once

#include <cstddef>

namespace rsdfo::simd::avx2 {

double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv_t(const double* q, std::size_t rows, std::size_t cols, std::size_t ld, const double* v,
            double* out);
void gemv_n(const double* q, std::size_t rows, std::size_t cols, std::size_t ld, const double* c,
            double* y);

}  // namespace rsdfo::simd::avx2
