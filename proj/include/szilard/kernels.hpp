#pragma once

// Dense/sparse vector kernels used by the Lanczos solver and the grid oracle.
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant; the variant is picked once at runtime from CPUID and
// can be overridden for equivalence testing.

#include <cstdint>
#include <span>

namespace szilard::kernels {

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa);

/// Best variant the running CPU supports.
Isa detected_isa();
bool isa_supported(Isa isa);

Isa active_isa();
/// Throws std::invalid_argument for a variant the CPU cannot run.
void set_active_isa(Isa isa);

/// Read-only compressed-sparse-row matrix.
struct CsrView {
  std::span<const std::int64_t> row_ptr;  // rows + 1 entries
  std::span<const std::int32_t> cols;
  std::span<const double> values;

  std::size_t rows() const { return row_ptr.empty() ? 0 : row_ptr.size() - 1; }
};

double dot(std::span<const double> x, std::span<const double> y);
/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> x);
/// y = diag .* x + s * (A x). An empty `diag` means zero.
void diag_plus_csr_matvec(std::span<const double> diag, double s, const CsrView& a,
                          std::span<const double> x, std::span<double> y);

inline void csr_matvec(const CsrView& a, std::span<const double> x,
                       std::span<double> y) {
  diag_plus_csr_matvec({}, 1.0, a, x, y);
}

// Per-variant entry points, exposed for equivalence tests.
namespace scalar {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> x);
void diag_plus_csr_matvec(std::span<const double> diag, double s, const CsrView& a,
                          std::span<const double> x, std::span<double> y);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SZILARD_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> x);
void diag_plus_csr_matvec(std::span<const double> diag, double s, const CsrView& a,
                          std::span<const double> x, std::span<double> y);
}  // namespace avx2
#endif

}  // namespace szilard::kernels
