#include <cstddef>

#include "szilard/kernels.hpp"

namespace szilard::kernels::scalar {

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scale(double a, std::span<double> x) {
  for (double& v : x) v *= a;
}

void diag_plus_csr_matvec(std::span<const double> diag, double s, const CsrView& a,
                          std::span<const double> x, std::span<double> y) {
  const std::size_t rows = a.rows();
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = 0.0;
    for (std::int64_t p = a.row_ptr[r]; p < a.row_ptr[r + 1]; ++p) {
      acc += a.values[p] * x[a.cols[p]];
    }
    y[r] = s * acc + (diag.empty() ? 0.0 : diag[r] * x[r]);
  }
}

}  // namespace szilard::kernels::scalar
