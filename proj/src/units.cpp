#include "szilard/units.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "szilard/errors.hpp"

namespace szilard {

EngineParams normalize(const RawParams& raw) {
  if (!(raw.length > 0.0) || !(raw.mass > 0.0) || !(raw.hbar > 0.0)) {
    throw InvalidParameter("length, mass and hbar must be positive");
  }
  if (!(raw.thermal_energy > 0.0)) {
    throw InvalidParameter("temperature must be positive");
  }
  if (raw.n_particles < 1) {
    throw InvalidParameter("need at least one particle");
  }
  const double hbar2 = raw.hbar * raw.hbar;
  const double energy_unit = hbar2 / (raw.mass * raw.length * raw.length);
  const double coupling_unit = hbar2 / (raw.mass * raw.length);
  EngineParams p;
  p.n_particles = raw.n_particles;
  p.coupling = raw.coupling / coupling_unit;
  p.temperature = raw.thermal_energy / energy_unit;
  p.box_length = 1.0;
  return p;
}

RawParams as_raw(const EngineParams& params) {
  RawParams raw;
  raw.n_particles = params.n_particles;
  raw.coupling = params.coupling;
  raw.thermal_energy = params.temperature;
  raw.length = params.box_length;
  return raw;
}

double round_coupling_key(double g_eff) {
  if (g_eff == 0.0 || !std::isfinite(g_eff)) return g_eff == 0.0 ? 0.0 : g_eff;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", g_eff);
  return std::strtod(buf, nullptr);
}

std::vector<double> scale_spectrum(std::span<const double> unit_box_energies,
                                   double length) {
  if (!(length > 0.0) || length > 1.0) {
    throw DomainError("subsystem length must lie in (0, 1]");
  }
  const double factor = 1.0 / (length * length);
  std::vector<double> out(unit_box_energies.begin(), unit_box_energies.end());
  for (double& e : out) e *= factor;
  return out;
}

}  // namespace szilard
