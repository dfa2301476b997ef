#pragma once
// Brute-force references for the spectrum code: a real-space grid for two
// particles and direct quadrature of the mode overlap integrals.

#include <vector>

namespace szilard {

struct GridSpec {
  int points_per_side = 100;
  double length = 1.0;
  double spacing() const { return length / (points_per_side + 1); }
};

/// Lowest k eigenvalues of two bosons on a Dirichlet grid of P interior
/// points per coordinate: H = -1/2 (d2/dx1^2 + d2/dx2^2) + (g/h) delta_{x1,x2}
/// on the symmetric subspace.
std::vector<double> two_particle_grid_levels(double g, const GridSpec& grid, int k);

struct GridEnergies {
  std::vector<double> coarse;
  std::vector<double> fine;
  /// Richardson extrapolation h -> 0 assuming error ~ h^2.
  std::vector<double> extrapolated;
};

/// Grid levels at P and 2P and their extrapolation. Throws ConvergenceError
/// (message carrying both resolutions) if any level moves by more than
/// `max_relative_step` between them.
GridEnergies two_particle_grid_study(double g, const GridSpec& grid, int k,
                                     double max_relative_step = 0.05);

/// Extrapolated levels of two_particle_grid_study.
std::vector<double> two_particle_grid_energies(double length, double g, const GridSpec& grid,
                                               int k);

/// int_0^l phi_i phi_j phi_k phi_l dx by panelled Gauss-Kronrod. Throws
/// ConvergenceError if the error estimate exceeds 1e-11 / l.
/// Indices must lie in 1..50.
double quadrature_integral(int i, int j, int k, int l, double length = 1.0);

}  // namespace szilard
