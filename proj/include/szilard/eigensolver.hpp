#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "szilard/kernels.hpp"
#include "szilard/sparse.hpp"

namespace szilard {

/// Symmetric operator diag + scale * offdiag, applied without forming a new
/// matrix. This is how a coupling-dependent Hamiltonian H0 + g V is passed.
struct SymmetricOperator {
  std::size_t dim = 0;
  std::span<const double> diag;  // may be empty
  double scale = 1.0;
  kernels::CsrView offdiag;

  static SymmetricOperator of(const CsrMatrix& m) { return {m.dim(), {}, 1.0, m.view()}; }
  void apply(std::span<const double> x, std::span<double> y) const {
    kernels::diag_plus_csr_matvec(diag, scale, offdiag, x, y);
  }
};

struct EigenOptions {
  /// Relative accuracy of each returned eigenvalue.
  double tolerance = 1e-9;
  /// Dimensions up to this are solved densely.
  std::size_t dense_threshold = 1200;
  std::size_t max_krylov = 260;
  int max_restarts = 60;
  std::uint64_t seed = 0x5a11a4d;
};

struct EigenStats {
  std::size_t matvecs = 0;
  int lanczos_runs = 0;
  bool dense = false;
};

/// The k smallest eigenvalues in ascending order, multiplicities included.
/// Throws ConvergenceError (carrying the worst residual) if the iterative
/// path does not converge.
std::vector<double> lowest_eigenvalues(const SymmetricOperator& op, std::size_t k,
                                       const EigenOptions& opts = {},
                                       EigenStats* stats = nullptr);

inline std::vector<double> lowest_eigenvalues(const CsrMatrix& h, std::size_t k,
                                              const EigenOptions& opts = {},
                                              EigenStats* stats = nullptr) {
  return lowest_eigenvalues(SymmetricOperator::of(h), k, opts, stats);
}

/// All eigenvalues by dense diagonalization.
std::vector<double> all_eigenvalues_dense(const SymmetricOperator& op);

/// Iterative path regardless of dimension (exposed for testing).
std::vector<double> lanczos_lowest(const SymmetricOperator& op, std::size_t k,
                                   const EigenOptions& opts = {}, EigenStats* stats = nullptr);

}  // namespace szilard
