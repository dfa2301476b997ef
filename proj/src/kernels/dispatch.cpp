#include <atomic>
#include <stdexcept>
#include <string>

#include "szilard/kernels.hpp"

namespace szilard::kernels {
namespace {

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(SZILARD_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() { return isa_supported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar; }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument(std::string("kernel variant not supported here: ") +
                                isa_name(isa));
  }
  active().store(isa, std::memory_order_relaxed);
}

#if defined(SZILARD_HAVE_AVX2_KERNELS)
#define SZILARD_DISPATCH(fn, ...)                                       \
  (active_isa() == Isa::kAvx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define SZILARD_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double dot(std::span<const double> x, std::span<const double> y) {
  return SZILARD_DISPATCH(dot, x, y);
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  SZILARD_DISPATCH(axpy, a, x, y);
}

void scale(double a, std::span<double> x) { SZILARD_DISPATCH(scale, a, x); }

void diag_plus_csr_matvec(std::span<const double> diag, double s, const CsrView& a,
                          std::span<const double> x, std::span<double> y) {
  SZILARD_DISPATCH(diag_plus_csr_matvec, diag, s, a, x, y);
}

}  // namespace szilard::kernels
