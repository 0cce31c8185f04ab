#include <atomic>
#include <cstdlib>
#include <string>

#include "rsdfo/error.hpp"
#include "rsdfo/simd/kernels.hpp"

#if defined(RSDFO_HAVE_AVX2)
#include "simd/kernels_avx2.hpp"
#endif

namespace rsdfo::simd {

namespace {

constexpr KernelTable kScalarTable{&scalar::dot, &scalar::axpy, &scalar::gemv_t, &scalar::gemv_n};

#if defined(RSDFO_HAVE_AVX2)
constexpr KernelTable kAvx2Table{&avx2::dot, &avx2::axpy, &avx2::gemv_t, &avx2::gemv_n};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

Isa detect() {
  if (const char* env = std::getenv("RSDFO_ISA"); env != nullptr && std::string(env) == "scalar") {
    return Isa::scalar;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> table{&kernel_table(detect())};
  return table;
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(RSDFO_HAVE_AVX2)
      return cpu_has_avx2();
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernel_table(Isa isa) {
#if defined(RSDFO_HAVE_AVX2)
  if (isa == Isa::avx2) {
    if (!cpu_has_avx2()) throw ParameterError("AVX2 kernels requested but the CPU lacks AVX2/FMA");
    return kAvx2Table;
  }
#else
  if (isa == Isa::avx2) throw ParameterError("AVX2 kernels not compiled into this build");
#endif
  return kScalarTable;
}

Isa active_isa() { return active_table().load() == &kScalarTable ? Isa::scalar : Isa::avx2; }

void set_isa(Isa isa) { active_table().store(&kernel_table(isa)); }

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const KernelTable& kernels() { return *active_table().load(std::memory_order_relaxed); }

}  // namespace rsdfo::simd
