#include "szilard/eigensolver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "szilard/errors.hpp"

namespace szilard {
namespace {

using Vec = std::vector<double>;

double norm(std::span<const double> x) { return std::sqrt(kernels::dot(x, x)); }

// Two passes of classical Gram-Schmidt against `basis`.
void orthogonalize(std::span<double> w, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vec& v : basis) kernels::axpy(-kernels::dot(v, w), v, w);
  }
}

struct RitzPair {
  double value;
  Vec vector;
};

struct LanczosRun {
  std::vector<RitzPair> converged;  // ascending
  Vec restart;                      // empty if the run ended cleanly
  double worst_residual = 0.0;
};

// One Lanczos pass with full reorthogonalization in the complement of
// `locked`, looking for the `want` lowest eigenpairs there.
LanczosRun lanczos_pass(const SymmetricOperator& op, const std::vector<Vec>& locked,
                        Vec start, std::size_t want, const EigenOptions& opts,
                        EigenStats* stats) {
  const std::size_t dim = op.dim;
  const std::size_t room = dim - locked.size();
  const std::size_t max_steps = std::min(room, std::max(opts.max_krylov, 3 * want + 40));

  orthogonalize(start, locked);
  double nrm = norm(start);
  LanczosRun out;
  if (nrm == 0.0) return out;
  kernels::scale(1.0 / nrm, start);

  std::vector<Vec> krylov;
  krylov.reserve(max_steps);
  krylov.push_back(std::move(start));
  Vec alpha, beta;
  Vec w(dim);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  auto ritz = [&](std::size_t m) {
    const Eigen::Map<const Eigen::VectorXd> d(alpha.data(), Eigen::Index(m));
    const Eigen::Map<const Eigen::VectorXd> e(beta.data(), Eigen::Index(m - 1));
    tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  };
  auto vectors_for = [&](std::size_t m, std::size_t count) {
    std::vector<RitzPair> pairs;
    for (std::size_t c = 0; c < count; ++c) {
      Vec y(dim, 0.0);
      for (std::size_t i = 0; i < m; ++i) kernels::axpy(tri.eigenvectors()(i, c), krylov[i], y);
      const double ny = norm(y);
      kernels::scale(1.0 / ny, y);
      pairs.push_back({tri.eigenvalues()(c), std::move(y)});
    }
    return pairs;
  };

  for (std::size_t j = 0; j < max_steps; ++j) {
    op.apply(krylov[j], w);
    if (stats) ++stats->matvecs;
    const double a = kernels::dot(krylov[j], w);
    alpha.push_back(a);
    kernels::axpy(-a, krylov[j], w);
    if (j > 0) kernels::axpy(-beta[j - 1], krylov[j - 1], w);
    orthogonalize(w, locked);
    orthogonalize(w, krylov);
    const double b = norm(w);
    beta.push_back(b);
    const std::size_t m = j + 1;
    const double scale_ref = std::max(1.0, std::abs(a));
    const bool exhausted = b <= 1e-13 * scale_ref || m == room;
    const bool check = exhausted || m == max_steps || (m >= want && (m % 8 == 0));
    if (check) {
      ritz(m);
      const std::size_t take = std::min(want, m);
      std::size_t good = 0;
      double worst = 0.0;
      for (std::size_t c = 0; c < take; ++c) {
        const double theta = tri.eigenvalues()(c);
        const double res = exhausted ? 0.0 : std::abs(b * tri.eigenvectors()(m - 1, c));
        worst = std::max(worst, res / std::max(1.0, std::abs(theta)));
        // residual bound; eigenvalue error is at most the residual norm
        if (res <= opts.tolerance * std::max(1.0, std::abs(theta))) {
          if (good == c) ++good;
        }
      }
      out.worst_residual = worst;
      if (exhausted || good == take) {
        out.converged = vectors_for(m, exhausted ? take : good);
        return out;
      }
      if (m == max_steps) {
        out.converged = vectors_for(m, good);
        // restart from the sum of the unconverged wanted Ritz vectors
        Vec restart(dim, 0.0);
        for (std::size_t c = good; c < take; ++c) {
          for (std::size_t i = 0; i < m; ++i) {
            kernels::axpy(tri.eigenvectors()(i, c), krylov[i], restart);
          }
        }
        out.restart = std::move(restart);
        return out;
      }
    }
    kernels::scale(1.0 / b, w);
    krylov.push_back(w);
  }
  return out;
}

Vec random_vector(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(dim);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace

std::vector<double> all_eigenvalues_dense(const SymmetricOperator& op) {
  const auto n = Eigen::Index(op.dim);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (!op.diag.empty()) h(r, r) += op.diag[r];
    for (auto p = op.offdiag.row_ptr[r]; p < op.offdiag.row_ptr[r + 1]; ++p) {
      h(r, op.offdiag.cols[p]) += op.scale * op.offdiag.values[p];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", 0.0);
  const auto& ev = es.eigenvalues();
  return Vec(ev.data(), ev.data() + ev.size());
}

std::vector<double> lanczos_lowest(const SymmetricOperator& op, std::size_t k,
                                   const EigenOptions& opts, EigenStats* stats) {
  std::mt19937_64 rng(opts.seed);
  std::vector<Vec> locked_vecs;
  Vec locked_vals;
  Vec pending_restart;
  double worst = 0.0;
  int runs = 0;
  while (locked_vecs.size() < op.dim) {
    if (runs++ > opts.max_restarts) {
      throw ConvergenceError("Lanczos did not converge after " +
                                 std::to_string(opts.max_restarts) + " restarts",
                             worst);
    }
    if (stats) ++stats->lanczos_runs;
    const bool verifying = locked_vals.size() >= k;
    const std::size_t want = verifying ? 1 : k - locked_vals.size();
    Vec start = pending_restart.empty() ? random_vector(op.dim, rng) : std::move(pending_restart);
    pending_restart.clear();
    LanczosRun run = lanczos_pass(op, locked_vecs, std::move(start), want, opts, stats);
    worst = run.worst_residual;
    if (verifying) {
      std::sort(locked_vals.begin(), locked_vals.end());
      const double kth = locked_vals[k - 1];
      if (run.converged.empty()) {
        if (run.restart.empty()) break;
        pending_restart = std::move(run.restart);
        continue;
      }
      const double found = run.converged.front().value;
      if (found >= kth - opts.tolerance * std::max(1.0, std::abs(kth))) break;
    }
    for (auto& pair : run.converged) {
      locked_vals.push_back(pair.value);
      locked_vecs.push_back(std::move(pair.vector));
    }
    if (!run.restart.empty()) pending_restart = std::move(run.restart);
  }
  std::sort(locked_vals.begin(), locked_vals.end());
  locked_vals.resize(std::min(k, locked_vals.size()));
  return locked_vals;
}

std::vector<double> lowest_eigenvalues(const SymmetricOperator& op, std::size_t k,
                                       const EigenOptions& opts, EigenStats* stats) {
  if (k > op.dim) throw InvalidParameter("requested more eigenvalues than the dimension");
  if (k == 0) return {};
  if (op.dim <= opts.dense_threshold) {
    if (stats) stats->dense = true;
    auto all = all_eigenvalues_dense(op);
    all.resize(k);
    return all;
  }
  return lanczos_lowest(op, k, opts, stats);
}

}  // namespace szilard
