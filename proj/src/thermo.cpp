#include "szilard/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "szilard/errors.hpp"

namespace szilard {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_sum_exp(std::span<const double> x) {
  if (x.empty()) return kNegInf;
  const double m = *std::max_element(x.begin(), x.end());
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double v : x) s += std::exp(v - m);
  return m + std::log(s);
}

PartitionValue partition_function(std::span<const double> energies, double temperature) {
  if (!(temperature > 0.0)) throw InvalidParameter("temperature must be positive");
  if (energies.empty()) throw InvalidParameter("empty spectrum");
  const double e0 = *std::min_element(energies.begin(), energies.end());
  double s = 0.0;
  for (double e : energies) s += std::exp(-(e - e0) / temperature);
  return {-e0 / temperature + std::log(s), e0};
}

PartitionValue partition_function(const Spectrum& spectrum, double temperature,
                                  double truncation_tol) {
  const PartitionValue v = partition_function(spectrum.energies, temperature);
  if (!std::isinf(spectrum.complete_below)) {
    const double reach = spectrum.complete_below - v.ground_energy_offset;
    const double needed = temperature * std::log(1.0 / truncation_tol);
    if (reach < needed * (1.0 - 1e-12)) {
      throw TruncationError("spectrum covers " + std::to_string(reach) +
                                " above the ground state; temperature needs " +
                                std::to_string(needed) + ", request a larger T_max",
                            needed);
    }
  }
  return v;
}

ExactMedium::ExactMedium(std::shared_ptr<SpectrumSolver> solver, EngineParams params,
                         double spectrum_temperature)
    : solver_(std::move(solver)),
      params_(params),
      t_max_(std::max(params.temperature, spectrum_temperature)) {
  if (params_.n_particles < 1) throw InvalidParameter("need at least one particle");
  if (!(params_.temperature > 0.0)) throw InvalidParameter("temperature must be positive");
  if (!solver_) throw InvalidParameter("missing spectrum solver");
}

double ExactMedium::subsystem_log_z(int n, double length) const {
  if (n < 0 || n > params_.n_particles) throw InvalidParameter("particle count out of range");
  if (length < 0.0 || length > 1.0) throw DomainError("subsystem length outside [0, 1]");
  if (length == 0.0) return n == 0 ? 0.0 : kNegInf;
  if (n == 0) return 0.0;
  const auto key = std::make_pair(n, length);
  {
    std::lock_guard lock(mutex_);
    const auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  const Spectrum s =
      solver_->subsystem_spectrum(n, length, params_.coupling, t_max_);
  const double lz =
      partition_function(s, params_.temperature, solver_->options().truncation_tol).log_z;
  std::lock_guard lock(mutex_);
  memo_[key] = lz;
  report_.converged = report_.converged && s.converged;
  report_.delta_log_z = std::max(report_.delta_log_z, s.delta_log_z);
  return lz;
}

ConvergenceReport ExactMedium::convergence() const {
  std::lock_guard lock(mutex_);
  return report_;
}

double composite_log_z(const Medium& medium, int n, double wall) {
  const int total = medium.particles();
  if (n < 0 || n > total) throw InvalidParameter("outcome out of range");
  if (wall < 0.0 || wall > 1.0) throw DomainError("wall position outside [0, 1]");
  const double left = medium.subsystem_log_z(n, wall);
  if (left == kNegInf) return kNegInf;
  const double right = medium.subsystem_log_z(total - n, 1.0 - wall);
  return left + right;
}

OutcomeDistribution outcome_distribution(const Medium& medium, double wall) {
  OutcomeDistribution d;
  d.wall_position = wall;
  const int total = medium.particles();
  d.per_outcome_log_z.resize(total + 1);
  for (int n = 0; n <= total; ++n) d.per_outcome_log_z[n] = composite_log_z(medium, n, wall);
  d.log_z_sum = log_sum_exp(d.per_outcome_log_z);
  d.probabilities.resize(total + 1);
  for (int n = 0; n <= total; ++n) {
    d.probabilities[n] = std::exp(d.per_outcome_log_z[n] - d.log_z_sum);
  }
  return d;
}

double shannon_information(std::span<const double> probabilities) {
  double info = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) info -= p * std::log(p);
  }
  return info;
}

}  // namespace szilard
