#include "szilard/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "szilard/errors.hpp"
#include "szilard/hamiltonian.hpp"

namespace szilard {

namespace {
constexpr std::size_t kProblemCacheSize = 8;
constexpr std::size_t kMaxWindowLevels = 600;
// beyond this many wanted levels a full dense solve is cheaper
constexpr std::size_t kDenseFallbackDim = 8000;
}  // namespace

struct SpectrumSolver::Problem {
  struct Sector {
    FockBasis basis;
    std::vector<double> h0;
    CsrMatrix v;
  };
  std::array<Sector, 2> sectors;
};

double log_partition_sum(std::span<const double> energies, double temperature) {
  if (energies.empty()) return -std::numeric_limits<double>::infinity();
  const double e0 = *std::min_element(energies.begin(), energies.end());
  double s = 0.0;
  for (double e : energies) s += std::exp(-(e - e0) / temperature);
  return -e0 / temperature + std::log(s);
}

SpectrumSolver::SpectrumSolver(SpectrumOptions options, std::shared_ptr<SpectrumStore> store)
    : options_(options), store_(std::move(store)) {}

SpectrumSolver::~SpectrumSolver() = default;

SpectrumSolverStats SpectrumSolver::stats() const {
  return {diagonalizations_.load(), memory_hits_.load(), store_hits_.load(),
          hamiltonians_built_.load()};
}

double SpectrumSolver::temperature_bucket(double t) {
  if (!(t > 0.0)) throw InvalidParameter("temperature must be positive");
  return std::exp2(std::ceil(4.0 * std::log2(t) - 1e-9) / 4.0);
}

double SpectrumSolver::window_for(double temperature) const {
  return temperature * std::log(1.0 / options_.truncation_tol);
}

int SpectrumSolver::modes_for(int n, long budget) const {
  // highest mode reachable with the other n-1 particles in mode 1
  int m = int(std::floor(std::sqrt(double(budget - (n - 1)))));
  if (options_.mode_cap > 0) m = std::min(m, options_.mode_cap);
  return std::max(m, 1);
}

std::shared_ptr<const SpectrumSolver::Problem> SpectrumSolver::problem(int n, int n_modes,
                                                                       long budget) {
  const auto key = std::make_tuple(n, n_modes, budget);
  {
    std::lock_guard lock(mutex_);
    for (const auto& [k, p] : problems_) {
      if (k == key) return p;
    }
  }
  const ModeBasis modes{1.0, n_modes};
  const FockBasis full = build_fock_basis(n, n_modes, double(budget) * modes.energy_quantum());
  auto parts = full.split_by_parity();
  auto prob = std::make_shared<Problem>();
  for (int s = 0; s < 2; ++s) {
    auto& sec = prob->sectors[s];
    sec.basis = std::move(parts[s]);
    sec.h0 = noninteracting_energies(sec.basis, modes);
    sec.v = assemble_interaction(sec.basis, modes);
  }
  ++hamiltonians_built_;
  std::lock_guard lock(mutex_);
  problems_.emplace_back(key, prob);
  if (problems_.size() > kProblemCacheSize) problems_.erase(problems_.begin());
  return prob;
}

Spectrum SpectrumSolver::unit_box_spectrum(int n, double g_eff, int n_modes, long budget,
                                           double window) {
  Spectrum out;
  out.n = n;
  out.length = 1.0;
  const double quantum = kPi * kPi / 2.0;
  out.key = SubsystemKey{n, g_eff, n_modes, double(budget) * quantum};
  const UnitKey ukey{n, g_eff, n_modes, budget};

  auto serve = [&](const Stored& s) -> bool {
    const double need = s.energies.front() + window;
    if (s.complete_below < need && !std::isinf(s.complete_below)) return false;
    for (double e : s.energies) {
      if (e <= need) out.energies.push_back(e);
    }
    out.complete_below = std::min(s.complete_below, need);
    return true;
  };

  {
    std::lock_guard lock(mutex_);
    const auto it = unit_cache_.find(ukey);
    if (it != unit_cache_.end() && serve(it->second)) {
      ++memory_hits_;
      return out;
    }
  }
  if (store_) {
    if (auto rec = store_->find(out.key)) {
      Stored s{rec->complete_below, rec->energies};
      if (serve(s)) {
        ++store_hits_;
        std::lock_guard lock(mutex_);
        unit_cache_[ukey] = std::move(s);
        return out;
      }
    }
  }

  const auto prob = problem(n, n_modes, budget);
  ++diagonalizations_;
  std::vector<double> levels;
  bool whole = std::isinf(window);
  for (const auto& sec : prob->sectors) {
    const std::size_t dim = sec.basis.size();
    if (dim == 0) continue;
    SymmetricOperator op{dim, sec.h0, g_eff, sec.v.view()};
    std::vector<double> vals;
    if (g_eff == 0.0 || whole || dim <= options_.eigen.dense_threshold) {
      if (g_eff == 0.0) {
        vals = sec.h0;
        std::sort(vals.begin(), vals.end());
      } else {
        vals = all_eigenvalues_dense(op);
      }
      if (!whole) {
        const double cut = vals.front() + window;
        vals.erase(std::upper_bound(vals.begin(), vals.end(), cut), vals.end());
      }
    } else {
      std::size_t k = std::min<std::size_t>(dim, 8);
      while (true) {
        vals = lowest_eigenvalues(op, k, options_.eigen);
        if (vals.back() > vals.front() + window || k == dim) break;
        if (2 * k > dim / 3 && dim <= kDenseFallbackDim) {
          vals = all_eigenvalues_dense(op);
          break;
        }
        if (k >= kMaxWindowLevels) {
          throw ConvergenceError("thermal window needs more than " +
                                     std::to_string(kMaxWindowLevels) + " levels",
                                 vals.back() - vals.front());
        }
        k = std::min(dim, 2 * k);
      }
      const double cut = vals.front() + window;
      vals.erase(std::upper_bound(vals.begin(), vals.end(), cut), vals.end());
    }
    levels.insert(levels.end(), vals.begin(), vals.end());
  }
  std::sort(levels.begin(), levels.end());
  Stored s;
  s.complete_below = whole ? std::numeric_limits<double>::infinity() : levels.front() + window;
  s.energies = levels;
  if (!whole) {
    s.energies.erase(std::upper_bound(s.energies.begin(), s.energies.end(), s.complete_below),
                     s.energies.end());
  }
  if (store_ && !whole) {
    store_->insert({out.key, options_.eigen.tolerance, s.complete_below, s.energies});
  }
  serve(s);
  std::lock_guard lock(mutex_);
  unit_cache_[ukey] = std::move(s);
  return out;
}

BasisPlan SpectrumSolver::plan(int n, double g, double t_max) {
  const double tb = temperature_bucket(t_max);
  const auto key = std::make_tuple(n, g, tb);
  {
    std::lock_guard lock(mutex_);
    const auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
  }
  BasisPlan plan;
  plan.n = n;
  plan.coupling = g;
  plan.temperature = tb;
  const double quantum = kPi * kPi / 2.0;
  const double window = window_for(tb);
  const long base = long(n) + long(std::ceil(window / quantum));

  auto fill = [&](long budget) {
    plan.quantum_budget = budget;
    plan.n_modes = modes_for(n, budget);
    plan.energy_cutoff = double(budget) * quantum;
    plan.dimension = count_fock_states(n, plan.n_modes, budget);
  };

  const double g_key = round_coupling_key(g);
  const auto log_z_at = [&] {
    return log_partition_sum(
        unit_box_spectrum(n, g_key, plan.n_modes, plan.quantum_budget, window).energies, tb);
  };
  if (options_.energy_cutoff > 0.0) {
    const long fixed = long(std::floor(options_.energy_cutoff * (1.0 + 1e-12)));
    if (fixed < n) throw EmptyBasisError("energy cutoff below the noninteracting ground state");
    fill(fixed);
    if (n >= 2 && g != 0.0) {
      const double lz = log_z_at();
      fill(long(std::ceil(double(fixed) * options_.growth)));
      plan.delta_log_z = std::abs(log_z_at() - lz);
      plan.converged = plan.delta_log_z < options_.z_tol;
      plan.escalations = 0;
      fill(fixed);
    }
  } else {
    long excess = options_.initial_excess;
    fill(base + excess);
    if (n >= 2 && g != 0.0) {
      double prev = log_z_at();
      plan.converged = false;
      plan.delta_log_z = std::numeric_limits<double>::infinity();
      for (int esc = 1; esc <= options_.max_escalations; ++esc) {
        const long next_excess = long(std::ceil(double(excess) * options_.growth));
        const long budget = base + next_excess;
        // the sector split roughly halves the dimension
        if (count_fock_states(n, modes_for(n, budget), budget) > 2 * options_.max_dimension) {
          break;
        }
        excess = next_excess;
        fill(budget);
        plan.escalations = esc;
        const double cur = log_z_at();
        plan.delta_log_z = std::abs(cur - prev);
        prev = cur;
        if (plan.delta_log_z < options_.z_tol) {
          plan.converged = true;
          break;
        }
      }
    }
  }
  std::lock_guard lock(mutex_);
  plans_[key] = plan;
  return plan;
}

Spectrum SpectrumSolver::subsystem_spectrum(int n, double length, double g, double t_max) {
  if (n < 0) throw InvalidParameter("negative particle count");
  if (!(length > 0.0) || length > 1.0) {
    throw DomainError("subsystem length must lie in (0, 1]");
  }
  Spectrum out;
  out.n = n;
  out.length = length;
  if (n == 0) {
    out.energies = {0.0};
    out.key = SubsystemKey{0, 0.0, 0, 0.0};
    return out;
  }
  const double tb = temperature_bucket(t_max);
  const double window = window_for(tb);
  if (n == 1) {
    const double quantum = kPi * kPi / (2.0 * length * length);
    const int k_max = int(std::floor(std::sqrt(1.0 + window / quantum))) + 1;
    for (int k = 1; k <= k_max; ++k) out.energies.push_back(quantum * k * k);
    out.complete_below = quantum * (double(k_max) * k_max + 0.5);
    out.key = SubsystemKey{1, round_coupling_key(g * length), k_max,
                           double(k_max) * k_max * kPi * kPi / 2.0};
    return out;
  }
  const BasisPlan p = plan(n, g, t_max);
  if (!p.converged && options_.throw_on_unconverged) {
    throw ConvergenceError("basis growth exhausted for n=" + std::to_string(n) +
                               ", g=" + std::to_string(g) + "; achieved |dlnZ|=" +
                               std::to_string(p.delta_log_z),
                           p.delta_log_z);
  }
  const double g_eff = round_coupling_key(g * length);
  const double l2 = length * length;
  Spectrum unit = unit_box_spectrum(n, g_eff, p.n_modes, p.quantum_budget, window * l2);
  out.key = unit.key;
  out.energies = scale_spectrum(unit.energies, length);
  out.complete_below = unit.complete_below / l2;
  out.converged = p.converged;
  out.delta_log_z = p.delta_log_z;
  return out;
}

}  // namespace szilard
