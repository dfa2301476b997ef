#pragma once

// Natural units: hbar = m = L = 1. Energies are then measured in hbar^2/(m L^2),
// so the single-particle box ground energy is E1 = pi^2/2 and the coupling
// unit g0 = hbar^2/(L m) is 1.

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace szilard {

inline constexpr double kPi = std::numbers::pi;
/// Single-particle ground energy of the full box.
inline constexpr double kE1 = kPi * kPi / 2.0;
inline constexpr double kLn2 = std::numbers::ln2;

/// Dimensionless engine configuration. `temperature` is k_B T in natural
/// energy units (k_B T = E1 corresponds to pi^2/2); `coupling` is g/g0.
struct EngineParams {
  int n_particles = 1;
  double coupling = 0.0;
  double temperature = kE1;
  double box_length = 1.0;

  bool operator==(const EngineParams&) const = default;
};

/// Physical inputs with explicit units (any consistent system).
struct RawParams {
  int n_particles = 1;
  double hbar = 1.0;
  double mass = 1.0;
  double length = 1.0;
  /// Contact strength g in energy x length.
  double coupling = 0.0;
  /// k_B T in energy units.
  double thermal_energy = kE1;
};

EngineParams normalize(const RawParams& raw);

/// The same configuration expressed as raw quantities with hbar = m = L = 1.
RawParams as_raw(const EngineParams& params);

inline double temperature_from_e1(double t_over_e1) { return t_over_e1 * kE1; }
inline double temperature_in_e1(double kt) { return kt / kE1; }

/// Cache identity of a unit-box spectrum. Two equal keys have identical
/// unit-box spectra; a subsystem of length l with coupling g maps to
/// g_eff = g * l.
struct SubsystemKey {
  int n = 0;
  double g_eff = 0.0;
  int basis_size = 0;
  double energy_cutoff = 0.0;

  bool operator==(const SubsystemKey&) const = default;
};

/// g_eff rounded to 12 significant digits, the precision used for cache keys.
double round_coupling_key(double g_eff);

/// E_i(l, g) = E_i(1, g l) / l^2 for a box of length 0 < l <= 1.
std::vector<double> scale_spectrum(std::span<const double> unit_box_energies,
                                   double length);

}  // namespace szilard
