#include "szilard/fock_basis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "szilard/errors.hpp"
#include "szilard/units.hpp"

namespace szilard {

double ModeBasis::energy_quantum() const { return kPi * kPi / (2.0 * length * length); }

double ModeBasis::energy(int k) const { return energy_quantum() * double(k) * double(k); }

std::vector<double> ModeBasis::mode_energies() const {
  std::vector<double> e(n_modes);
  for (int k = 1; k <= n_modes; ++k) e[k - 1] = energy(k);
  return e;
}

FockState FockState::from_modes(std::span<const int> modes) {
  if (modes.size() > kMaxFockParticles) {
    throw InvalidParameter("too many particles for a Fock state");
  }
  FockState s;
  s.count_ = int(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 1 || modes[i] > 0xffff) throw InvalidParameter("mode index out of range");
    s.modes_[i] = std::uint16_t(modes[i]);
  }
  std::sort(s.modes_.begin(), s.modes_.begin() + s.count_);
  return s;
}

FockState FockState::from_occupations(std::span<const int> occupations) {
  std::vector<int> modes;
  for (std::size_t k = 0; k < occupations.size(); ++k) {
    if (occupations[k] < 0) throw InvalidParameter("negative occupation");
    for (int c = 0; c < occupations[k]; ++c) modes.push_back(int(k) + 1);
  }
  return from_modes(modes);
}

int FockState::occupation(int mode) const {
  return int(std::count(modes_.begin(), modes_.begin() + count_, std::uint16_t(mode)));
}

std::vector<int> FockState::occupations(int n_modes) const {
  std::vector<int> occ(n_modes, 0);
  for (int i = 0; i < count_; ++i) {
    if (modes_[i] <= n_modes) ++occ[modes_[i] - 1];
  }
  return occ;
}

long FockState::quantum_sum() const {
  long s = 0;
  for (int i = 0; i < count_; ++i) s += long(modes_[i]) * modes_[i];
  return s;
}

double FockState::energy(const ModeBasis& modes) const {
  return modes.energy_quantum() * double(quantum_sum());
}

int FockState::parity() const {
  // phi_k is even about the centre for odd k.
  int flips = 0;
  for (int i = 0; i < count_; ++i) flips += (modes_[i] % 2 == 0);
  return flips % 2 == 0 ? 1 : -1;
}

FockBasis::FockBasis(std::vector<FockState> states) : states_(std::move(states)) {}

std::int64_t FockBasis::find(const FockState& s) const {
  const auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) return -1;
  return it - states_.begin();
}

std::array<FockBasis, 2> FockBasis::split_by_parity() const {
  std::vector<FockState> even, odd;
  for (const auto& s : states_) (s.parity() > 0 ? even : odd).push_back(s);
  return {FockBasis(std::move(even)), FockBasis(std::move(odd))};
}

namespace {

// Visits nondecreasing mode lists with sum of squares <= budget.
template <class Visit>
void enumerate(int n, int n_modes, long budget, Visit&& visit) {
  std::array<int, kMaxFockParticles> cur{};
  std::function<void(int, int, long)> rec = [&](int depth, int start, long used) {
    if (depth == n) {
      visit(std::span<const int>(cur.data(), size_t(n)));
      return;
    }
    const int remaining = n - depth;
    for (int k = start; k <= n_modes; ++k) {
      // the remaining particles sit at mode >= k
      if (used + long(k) * k * remaining > budget) break;
      cur[depth] = k;
      rec(depth + 1, k, used + long(k) * k);
    }
  };
  rec(0, 1, 0);
}

}  // namespace

std::size_t count_fock_states(int n, int n_modes, long quantum_budget) {
  if (n == 0) return 1;
  std::size_t count = 0;
  enumerate(n, n_modes, quantum_budget, [&](std::span<const int>) { ++count; });
  return count;
}

FockBasis build_fock_basis(int n, int n_modes, double energy_cutoff, double length) {
  if (n < 0 || n > kMaxFockParticles) throw InvalidParameter("unsupported particle count");
  if (n_modes < 1) throw InvalidParameter("need at least one mode");
  if (n == 0) {
    if (energy_cutoff < 0.0) throw EmptyBasisError("energy cutoff below vacuum energy");
    return FockBasis({FockState{}});
  }
  const double quantum = ModeBasis{length, n_modes}.energy_quantum();
  // integer budget on sum k^2, robust against rounding at the boundary
  const double ratio = energy_cutoff / quantum;
  const long budget = std::isinf(ratio) ? std::numeric_limits<long>::max() / 4
                                        : long(std::floor(ratio * (1.0 + 1e-12)));
  if (budget < n) throw EmptyBasisError("energy cutoff below the noninteracting ground energy");
  std::vector<FockState> states;
  enumerate(n, n_modes, budget, [&](std::span<const int> modes) {
    states.push_back(FockState::from_modes(modes));
  });
  return FockBasis(std::move(states));
}

}  // namespace szilard
