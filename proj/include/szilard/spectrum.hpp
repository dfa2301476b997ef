#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "szilard/eigensolver.hpp"
#include "szilard/fock_basis.hpp"
#include "szilard/spectrum_store.hpp"
#include "szilard/units.hpp"

namespace szilard {

/// Low-lying many-body levels of n bosons in a hard-wall box of `length`.
struct Spectrum {
  int n = 0;
  double length = 1.0;
  SubsystemKey key;
  /// Ascending energies at `length`, natural units.
  std::vector<double> energies;
  /// Every eigenvalue below this energy is present in `energies`.
  double complete_below = std::numeric_limits<double>::infinity();
  bool converged = true;
  /// |delta ln Z| between the last two basis sizes of the convergence check.
  double delta_log_z = 0.0;

  double ground_energy() const { return energies.front(); }
};

struct SpectrumOptions {
  /// Basis growth stops once |delta ln Z| at the plan temperature is below this.
  double z_tol = 1e-4;
  /// Largest Boltzmann weight (relative to the ground state) allowed for the
  /// first level that is not retained.
  double truncation_tol = 1e-12;
  /// Starting headroom of the cutoff, in units of the unit-box E1, above the
  /// noninteracting energy of the thermal window.
  long initial_excess = 24;
  double growth = 2.0;
  int max_escalations = 6;
  /// Per parity sector.
  std::size_t max_dimension = 20000;
  /// Optional cap on the number of modes M; 0 lets the energy cutoff decide.
  int mode_cap = 0;
  /// Fixed unit-box cutoff in units of E1; 0 selects it automatically.
  /// A fixed cutoff is still checked once against a grown basis.
  double energy_cutoff = 0.0;
  /// Throw ConvergenceError when the basis growth is exhausted; otherwise
  /// the spectrum is returned flagged.
  bool throw_on_unconverged = true;
  EigenOptions eigen;
};

/// Basis chosen for (n, g, temperature) by the convergence check at l = 1,
/// where both g_eff and the unit-box thermal window are largest.
struct BasisPlan {
  int n = 0;
  double coupling = 0.0;
  double temperature = 0.0;
  int n_modes = 0;
  long quantum_budget = 0;
  double energy_cutoff = 0.0;
  std::size_t dimension = 0;
  int escalations = 0;
  bool converged = true;
  double delta_log_z = 0.0;
};

struct SpectrumSolverStats {
  std::size_t diagonalizations = 0;
  std::size_t memory_hits = 0;
  std::size_t store_hits = 0;
  std::size_t hamiltonians_built = 0;
};

/// Computes and caches subsystem spectra. Unit-box spectra are memoized in
/// memory and, when a store is attached, on disk. Safe for concurrent use.
class SpectrumSolver {
 public:
  explicit SpectrumSolver(SpectrumOptions options = {},
                          std::shared_ptr<SpectrumStore> store = nullptr);
  ~SpectrumSolver();

  const SpectrumOptions& options() const { return options_; }

  /// Spectrum of n bosons on [0, length] with coupling g, retaining enough
  /// levels for temperatures up to t_max. Throws ConvergenceError if the
  /// basis check fails and options().throw_on_unconverged is set.
  Spectrum subsystem_spectrum(int n, double length, double g, double t_max);

  BasisPlan plan(int n, double g, double t_max);

  /// Unit-box spectrum in a fixed basis: levels within `window` of the
  /// ground state. An infinite window returns the whole truncated spectrum.
  Spectrum unit_box_spectrum(int n, double g_eff, int n_modes, long quantum_budget,
                             double window);

  SpectrumSolverStats stats() const;

  /// Temperature used for windows and plans: t rounded up onto a 2^(1/4) ladder.
  static double temperature_bucket(double t);

 private:
  struct Problem;
  std::shared_ptr<const Problem> problem(int n, int n_modes, long budget);
  double window_for(double temperature) const;
  int modes_for(int n, long budget) const;

  SpectrumOptions options_;
  std::shared_ptr<SpectrumStore> store_;

  mutable std::mutex mutex_;
  using UnitKey = std::tuple<int, double, int, long>;
  struct Stored {
    double complete_below;
    std::vector<double> energies;
  };
  std::map<UnitKey, Stored> unit_cache_;
  std::map<std::tuple<int, double, double>, BasisPlan> plans_;
  std::vector<std::pair<std::tuple<int, int, long>, std::shared_ptr<const Problem>>> problems_;

  std::atomic<std::size_t> diagonalizations_{0};
  std::atomic<std::size_t> memory_hits_{0};
  std::atomic<std::size_t> store_hits_{0};
  std::atomic<std::size_t> hamiltonians_built_{0};
};

/// ln Z = ln sum_j exp(-E_j / T) over `energies`.
double log_partition_sum(std::span<const double> energies, double temperature);

}  // namespace szilard
