#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "szilard/spectrum.hpp"
#include "szilard/units.hpp"

namespace szilard {

/// ln sum exp(x_i); -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> x);

struct PartitionValue {
  double log_z = 0.0;
  /// Energy subtracted before exponentiation (the lowest level).
  double ground_energy_offset = 0.0;
};

/// ln Z of a spectrum at temperature T. Throws TruncationError when the
/// spectrum's complete range ends before the Boltzmann weight has fallen to
/// `truncation_tol`.
PartitionValue partition_function(const Spectrum& spectrum, double temperature,
                                  double truncation_tol = 1e-12);
PartitionValue partition_function(std::span<const double> energies, double temperature);

struct ConvergenceReport {
  bool converged = true;
  /// Largest |delta ln Z| over the spectra consulted so far.
  double delta_log_z = 0.0;
};

/// Source of subsystem partition functions for an N-particle engine at a
/// fixed temperature. Implementations must be mirror symmetric: the same
/// function describes the left and the right side.
class Medium {
 public:
  virtual ~Medium() = default;
  virtual int particles() const = 0;
  virtual double temperature() const = 0;
  virtual std::string name() const = 0;
  /// ln Z of n particles in a box of length 0 <= length <= 1. A zero-length
  /// box holds only the vacuum: 0 for n = 0, -inf otherwise.
  virtual double subsystem_log_z(int n, double length) const = 0;
  virtual ConvergenceReport convergence() const { return {}; }
};

/// Interacting bosons from exact diagonalization. Spectra are requested for
/// T_max = max(T, spectrum_temperature), so media built for several
/// temperatures of one sweep can share their unit-box spectra.
class ExactMedium final : public Medium {
 public:
  ExactMedium(std::shared_ptr<SpectrumSolver> solver, EngineParams params,
              double spectrum_temperature = 0.0);
  int particles() const override { return params_.n_particles; }
  double temperature() const override { return params_.temperature; }
  std::string name() const override { return "exact"; }
  double subsystem_log_z(int n, double length) const override;
  ConvergenceReport convergence() const override;
  const EngineParams& params() const { return params_; }

 private:
  std::shared_ptr<SpectrumSolver> solver_;
  EngineParams params_;
  double t_max_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, double>, double> memo_;
  mutable ConvergenceReport report_;
};

/// ln Z_n(l) = ln Z_n^left(l) + ln Z_{N-n}^right(1 - l).
double composite_log_z(const Medium& medium, int n, double wall);

struct OutcomeDistribution {
  double wall_position = 0.5;
  std::vector<double> probabilities;
  std::vector<double> per_outcome_log_z;
  /// ln sum_n Z_n(l).
  double log_z_sum = 0.0;
};

OutcomeDistribution outcome_distribution(const Medium& medium, double wall);

/// -sum p ln p with 0 ln 0 = 0.
double shannon_information(std::span<const double> probabilities);
inline double shannon_information(const OutcomeDistribution& d) {
  return shannon_information(d.probabilities);
}

}  // namespace szilard
