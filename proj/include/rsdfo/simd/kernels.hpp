#pragma once

// Dense n-length kernels used on every solver iteration. Each kernel has a
// portable scalar reference and, on x86-64, an AVX2/FMA variant. The variant
// is picked once at first use from CPUID; `RSDFO_ISA=scalar` in the
// environment or `set_isa()` overrides it.
//
// Matrices are column-major with leading dimension `ld` (>= rows).

#include <cstddef>
#include <string_view>

namespace rsdfo::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[j] = sum_i Q[i + j*ld] * v[i], j < cols
  void (*gemv_t)(const double* q, std::size_t rows, std::size_t cols, std::size_t ld,
                 const double* v, double* out);
  // y[i] += sum_j Q[i + j*ld] * c[j]
  void (*gemv_n)(const double* q, std::size_t rows, std::size_t cols, std::size_t ld,
                 const double* c, double* y);
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv_t(const double* q, std::size_t rows, std::size_t cols, std::size_t ld, const double* v,
            double* out);
void gemv_n(const double* q, std::size_t rows, std::size_t cols, std::size_t ld, const double* c,
            double* y);
}  // namespace scalar

/// Whether this binary carries the variant and the CPU can run it.
bool isa_available(Isa isa);
Isa active_isa();
/// Throws rsdfo::ParameterError when the variant is unavailable.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);
const KernelTable& kernel_table(Isa isa);
const KernelTable& kernels();

inline double dot(const double* a, const double* b, std::size_t n) { return kernels().dot(a, b, n); }
inline double squared_norm(const double* a, std::size_t n) { return kernels().dot(a, a, n); }
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  kernels().axpy(alpha, x, y, n);
}
inline void gemv_t(const double* q, std::size_t rows, std::size_t cols, std::size_t ld,
                   const double* v, double* out) {
  kernels().gemv_t(q, rows, cols, ld, v, out);
}
inline void gemv_n(const double* q, std::size_t rows, std::size_t cols, std::size_t ld,
                   const double* c, double* y) {
  kernels().gemv_n(q, rows, cols, ld, c, y);
}

}  // namespace rsdfo::simd
