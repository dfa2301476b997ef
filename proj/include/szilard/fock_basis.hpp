#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace szilard {

/// Hard-wall eigenmodes phi_k(x) = sqrt(2/l) sin(k pi x / l), k = 1..M.
struct ModeBasis {
  double length = 1.0;
  int n_modes = 1;

  double energy(int k) const;
  std::vector<double> mode_energies() const;
  /// pi^2 / (2 l^2): energy of mode k is k^2 times this.
  double energy_quantum() const;
};

inline constexpr int kMaxFockParticles = 8;

/// Bosonic occupation-number state, stored as the nondecreasing list of
/// occupied mode indices (1-based). Ordering of the list representation is
/// the basis order: (2,0) < (1,1) < (0,2) in occupation form.
class FockState {
 public:
  FockState() = default;
  /// `modes` need not be sorted.
  static FockState from_modes(std::span<const int> modes);
  static FockState from_occupations(std::span<const int> occupations);

  int particles() const { return count_; }
  std::span<const std::uint16_t> modes() const { return {modes_.data(), size_t(count_)}; }
  int occupation(int mode) const;
  /// Dense occupation vector over modes 1..n_modes.
  std::vector<int> occupations(int n_modes) const;
  /// Sum of k^2 over particles.
  long quantum_sum() const;
  double energy(const ModeBasis& modes) const;
  /// Reflection parity about the box centre: +1 or -1.
  int parity() const;

  auto operator<=>(const FockState& o) const {
    return std::lexicographical_compare_three_way(modes_.begin(), modes_.begin() + count_,
                                                  o.modes_.begin(),
                                                  o.modes_.begin() + o.count_);
  }
  bool operator==(const FockState& o) const { return (*this <=> o) == 0; }

 private:
  std::array<std::uint16_t, kMaxFockParticles> modes_{};
  int count_ = 0;
};

/// Ordered basis with O(log d) lookup.
class FockBasis {
 public:
  FockBasis() = default;
  /// `states` must be sorted and unique.
  explicit FockBasis(std::vector<FockState> states);

  std::size_t size() const { return states_.size(); }
  bool empty() const { return states_.empty(); }
  const FockState& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<FockState>& states() const { return states_; }
  /// Index of `s`, or -1.
  std::int64_t find(const FockState& s) const;

  /// Split by reflection parity; index 0 holds even states.
  std::array<FockBasis, 2> split_by_parity() const;

 private:
  std::vector<FockState> states_;
};

/// All n-boson states over modes 1..n_modes of `modes` with noninteracting
/// energy <= energy_cutoff, in ascending basis order. n = 0 gives the vacuum.
/// Throws EmptyBasisError when the cutoff lies below the ground energy.
FockBasis build_fock_basis(int n, int n_modes, double energy_cutoff, double length = 1.0);

/// Number of states build_fock_basis would return, without storing them.
std::size_t count_fock_states(int n, int n_modes, long quantum_budget);

}  // namespace szilard
