#pragma once

#include <span>
#include <string>
#include <vector>

#include "szilard/thermo.hpp"
#include "szilard/units.hpp"

namespace szilard {

/// Classical Szilard engine with N distinguishable particles, removals at
/// m/N. Returns W / k_BT.
double classical_work(int n_particles, double insertion);

enum class Statistics { kBose, kFermi };

/// Canonical ln Z of n ideal particles over the given single-particle
/// levels. Throws TruncationError if the highest level still carries a
/// Boltzmann weight above `truncation_tol` relative to the lowest.
double ideal_canonical_log_z(int n, std::span<const double> single_particle_energies,
                             double temperature, Statistics statistics,
                             double truncation_tol = 1e-12);

/// All ln Z_m for m = 0..n in one pass.
std::vector<double> ideal_canonical_log_z_table(int n,
                                                std::span<const double> single_particle_energies,
                                                double temperature, Statistics statistics,
                                                double truncation_tol = 1e-12);

/// Hard-wall levels k^2 pi^2 / (2 l^2) up to where exp(-(e_k - e_1)/T) < tol,
/// plus enough extra levels for n fermions.
std::vector<double> box_levels(double length, double temperature, int n,
                               double truncation_tol = 1e-12);

struct PerturbativeSpectrumParams {
  int n_left = 0;
  int n_particles = 0;
  double wall = 0.5;
  double coupling = 0.0;
  double unperturbed = 0.0;
  double shift = 0.0;
  /// |g| (N - 1) / pi^2 <= kPerturbativeCouplingLimit.
  bool valid = true;
};

inline constexpr double kPerturbativeCouplingLimit = 0.1;

PerturbativeSpectrumParams perturbative_spectrum_params(int n_left, int n_particles,
                                                        double wall, double g);

/// Lowest noninteracting configuration with n_left particles left of the
/// wall plus the first-order contact shift.
double perturbative_energy(int n_left, int n_particles, double wall, double g);

/// -3 (N - 1) g, the thermal scale of pair breaking at the centre wall.
double peak_temperature_estimate(int n_particles, double g);

class IdealMedium final : public Medium {
 public:
  IdealMedium(int n_particles, double temperature, Statistics statistics);
  int particles() const override { return n_; }
  double temperature() const override { return t_; }
  std::string name() const override;
  double subsystem_log_z(int n, double length) const override;

 private:
  int n_;
  double t_;
  Statistics stats_;
};

/// One configuration per side: every particle in the side's lowest mode,
/// energies to first order in g.
class PerturbativeMedium final : public Medium {
 public:
  PerturbativeMedium(int n_particles, double coupling, double temperature);
  int particles() const override { return n_; }
  double temperature() const override { return t_; }
  std::string name() const override { return "perturbative"; }
  double subsystem_log_z(int n, double length) const override;
  /// Coupling within the weak limit and k_BT <= E1.
  bool valid() const;

 private:
  int n_;
  double g_;
  double t_;
};

/// Distinguishable classical particles: Z_n(l) proportional to l^n / n!.
class ClassicalMedium final : public Medium {
 public:
  ClassicalMedium(int n_particles, double temperature);
  int particles() const override { return n_; }
  double temperature() const override { return t_; }
  std::string name() const override { return "classical"; }
  double subsystem_log_z(int n, double length) const override;

 private:
  int n_;
  double t_;
};

}  // namespace szilard
