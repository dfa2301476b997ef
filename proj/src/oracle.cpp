#include "szilard/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "szilard/errors.hpp"
#include "szilard/units.hpp"

namespace szilard {

namespace {

using SpMat = Eigen::SparseMatrix<double>;

SpMat symmetric_grid_hamiltonian(double g, const GridSpec& grid) {
  const int p = grid.points_per_side;
  const double h = grid.spacing();
  const double t = 0.5 / (h * h);
  // symmetric states |i,j> with i <= j
  auto index = [p](int i, int j) {
    if (i > j) std::swap(i, j);
    return i * p - i * (i - 1) / 2 + (j - i);
  };
  const int dim = p * (p + 1) / 2;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(std::size_t(dim) * 5);
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      const int a = index(i, j);
      trip.emplace_back(a, a, 4.0 * t + (i == j ? g / h : 0.0));
      // each off-diagonal hop between normalized symmetric states carries
      // sqrt(2) when exactly one side is a doubly occupied site
      auto hop = [&](int ii, int jj) {
        if (ii < 0 || jj < 0 || ii >= p || jj >= p) return;
        const int b = index(ii, jj);
        if (b < a) return;
        const bool da = i == j, db = ii == jj;
        const double amp = (da != db) ? -t * std::sqrt(2.0) : -t;
        trip.emplace_back(a, b, amp);
        trip.emplace_back(b, a, amp);
      };
      hop(i - 1, j);
      hop(i + 1, j);
      if (i != j) {
        hop(i, j - 1);
        hop(i, j + 1);
      }
    }
  }
  SpMat m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

// Lowest k eigenvalues by shift-invert subspace iteration. The shift is
// lowered until the factorization shows no eigenvalue below it.
std::vector<double> lowest_by_subspace_iteration(const SpMat& h, int k, double shift) {
  const Eigen::Index dim = h.rows();
  SpMat eye(dim, dim);
  eye.setIdentity();
  Eigen::SimplicialLDLT<SpMat> ldlt;
  for (int attempt = 0;; ++attempt) {
    ldlt.compute(h - shift * eye);
    if (ldlt.info() != Eigen::Success) throw ConvergenceError("grid factorization failed", 0.0);
    if ((ldlt.vectorD().array() < 0.0).count() == 0) break;
    if (attempt > 30) throw ConvergenceError("no lower bound for the grid spectrum", shift);
    shift = 2.0 * shift - 1.0;
  }
  const int block = k + 6;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, block);
  for (int c = 0; c < block; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) x(r, c) = std::sin(0.7 * (r + 1) * (c + 1) + 0.3 * c);
  }
  Eigen::VectorXd prev = Eigen::VectorXd::Constant(k, std::numeric_limits<double>::infinity());
  for (int it = 0; it < 500; ++it) {
    Eigen::MatrixXd y = ldlt.solve(x);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, block);
    Eigen::MatrixXd small = q.transpose() * (h * q);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (small + small.transpose()));
    x = q * es.eigenvectors();
    const Eigen::VectorXd vals = es.eigenvalues().head(k);
    const double change = (vals - prev).cwiseAbs().maxCoeff();
    prev = vals;
    if (change <= 1e-12 * std::max(1.0, vals.cwiseAbs().maxCoeff())) {
      return std::vector<double>(vals.data(), vals.data() + k);
    }
  }
  throw ConvergenceError("grid subspace iteration did not converge", 0.0);
}

}  // namespace

std::vector<double> two_particle_grid_levels(double g, const GridSpec& grid, int k) {
  if (grid.points_per_side < 4) throw InvalidParameter("grid too coarse");
  if (!(grid.length > 0.0)) throw InvalidParameter("grid length must be positive");
  const SpMat h = symmetric_grid_hamiltonian(g, grid);
  if (k < 1 || k > h.rows()) throw InvalidParameter("bad level count");
  // free-space binding energy of the attractive pair is g^2/4
  const double shift = g < 0.0 ? -0.5 * g * g - 1.0 : -1.0;
  return lowest_by_subspace_iteration(h, k, shift);
}

GridEnergies two_particle_grid_study(double g, const GridSpec& grid, int k,
                                     double max_relative_step) {
  GridEnergies out;
  GridSpec fine = grid;
  fine.points_per_side = 2 * grid.points_per_side;
  out.coarse = two_particle_grid_levels(g, grid, k);
  out.fine = two_particle_grid_levels(g, fine, k);
  const double h1 = grid.spacing(), h2 = fine.spacing();
  const double w1 = h1 * h1, w2 = h2 * h2;
  bool ok = true;
  for (int i = 0; i < k; ++i) {
    out.extrapolated.push_back((out.fine[i] * w1 - out.coarse[i] * w2) / (w1 - w2));
    const double step = std::abs(out.fine[i] - out.coarse[i]);
    if (step > max_relative_step * std::max(1.0, std::abs(out.fine[i]))) ok = false;
  }
  if (!ok) {
    std::ostringstream msg;
    msg << "grid levels not converged between P=" << grid.points_per_side << " and P="
        << fine.points_per_side << ":";
    for (int i = 0; i < k; ++i) msg << ' ' << out.coarse[i] << '/' << out.fine[i];
    throw ConvergenceError(msg.str(), 0.0);
  }
  return out;
}

std::vector<double> two_particle_grid_energies(double length, double g, const GridSpec& grid,
                                               int k) {
  GridSpec spec = grid;
  spec.length = length;
  return two_particle_grid_study(g, spec, k).extrapolated;
}

double quadrature_integral(int i, int j, int k, int l, double length) {
  for (int m : {i, j, k, l}) {
    if (m < 1 || m > 50) throw InvalidParameter("quadrature indices must lie in 1..50");
  }
  if (!(length > 0.0)) throw InvalidParameter("length must be positive");
  const double c = kPi / length;
  const auto f = [&](double x) {
    return std::sin(i * c * x) * std::sin(j * c * x) * std::sin(k * c * x) * std::sin(l * c * x);
  };
  // one panel per half-period of the fastest factor combination
  const int panels = i + j + k + l;
  double sum = 0.0, err = 0.0;
  for (int p = 0; p < panels; ++p) {
    double e = 0.0;
    const double a = length * p / panels, b = length * (p + 1) / panels;
    sum += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 3, 1e-13, &e);
    err += e;
  }
  const double norm = 4.0 / (length * length);
  // the Kronrod-Gauss difference is roundoff dominated here; scale by 1/l
  if (err * norm * length > 1e-11) {
    throw ConvergenceError("quadrature tolerance not met", err * norm);
  }
  return sum * norm;
}

}  // namespace szilard
