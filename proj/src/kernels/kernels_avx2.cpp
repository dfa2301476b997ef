// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include <cstddef>

#include "szilard/kernels.hpp"

namespace szilard::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const double* px = x.data();
  const double* py = y.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i + 4), _mm256_loadu_pd(py + i + 4),
                           acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += px[i] * py[i];
  return s;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const double* px = x.data();
  double* py = y.data();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(py + i,
                     _mm256_fmadd_pd(va, _mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i)));
  }
  for (; i < n; ++i) py[i] += a * px[i];
}

void scale(double a, std::span<double> x) {
  const std::size_t n = x.size();
  double* px = x.data();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(px + i, _mm256_mul_pd(va, _mm256_loadu_pd(px + i)));
  }
  for (; i < n; ++i) px[i] *= a;
}

void diag_plus_csr_matvec(std::span<const double> diag, double s, const CsrView& a,
                          std::span<const double> x, std::span<double> y) {
  const std::size_t rows = a.rows();
  const double* px = x.data();
  const double* vals = a.values.data();
  const std::int32_t* cols = a.cols.data();
  for (std::size_t r = 0; r < rows; ++r) {
    std::int64_t p = a.row_ptr[r];
    const std::int64_t end = a.row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; p + 4 <= end; p += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + p));
      const __m256d xv = _mm256_i32gather_pd(px, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(vals + p), xv, acc);
    }
    double sum = hsum(acc);
    for (; p < end; ++p) sum += vals[p] * px[cols[p]];
    y[r] = s * sum + (diag.empty() ? 0.0 : diag[r] * px[r]);
  }
}

}  // namespace szilard::kernels::avx2
