#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "szilard/errors.hpp"
#include "szilard/fock_basis.hpp"
#include "szilard/units.hpp"

using namespace szilard;

namespace {

// Independent enumerator: walk every occupation vector over M modes with
// total n, keep those with sum n_k k^2 <= budget.
std::vector<std::vector<int>> brute_force(int n, int m, long budget) {
  std::vector<std::vector<int>> out;
  std::vector<int> occ(m, 0);
  std::function<void(int, int)> rec = [&](int mode, int left) {
    if (mode == m - 1) {
      occ[mode] = left;
      long e = 0;
      for (int k = 0; k < m; ++k) e += long(occ[k]) * (k + 1) * (k + 1);
      if (e <= budget) out.push_back(occ);
      return;
    }
    for (int c = left; c >= 0; --c) {
      occ[mode] = c;
      rec(mode + 1, left - c);
    }
  };
  rec(0, n);
  return out;
}

}  // namespace

TEST_CASE("vacuum basis") {
  for (int m : {1, 5, 30}) {
    const FockBasis b = build_fock_basis(0, m, 0.0);
    REQUIRE(b.size() == 1);
    CHECK(b[0].particles() == 0);
    CHECK(b[0].energy(ModeBasis{1.0, m}) == 0.0);
  }
}

TEST_CASE("two bosons in two modes, no cutoff") {
  const FockBasis b = build_fock_basis(2, 2, std::numeric_limits<double>::infinity());
  REQUIRE(b.size() == 3);
  CHECK(b[0].occupations(2) == std::vector<int>{2, 0});
  CHECK(b[1].occupations(2) == std::vector<int>{1, 1});
  CHECK(b[2].occupations(2) == std::vector<int>{0, 2});
}

TEST_CASE("n=4, M=10, E_cut=60 E1 matches brute-force enumeration") {
  const FockBasis b = build_fock_basis(4, 10, 60.0 * kE1);
  const auto ref = brute_force(4, 10, 60);
  REQUIRE(b.size() == ref.size());
  // same set, same lexicographic order on occupations (descending on the
  // leading mode as in (2,0) < (1,1) < (0,2))
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(b[i].occupations(10) == ref[i]);
  CHECK(count_fock_states(4, 10, 60) == ref.size());
  // frozen from the brute-force enumerator
  CHECK(ref.size() == 71);
}

TEST_CASE("basis counts agree with brute force over a range of cutoffs") {
  for (int n = 1; n <= 4; ++n) {
    for (int m : {1, 3, 6}) {
      for (long budget : {long(n), 10L, 27L, 50L}) {
        if (budget < n) continue;
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(budget);
        const auto ref = brute_force(n, m, budget);
        CHECK(build_fock_basis(n, m, double(budget) * kE1).size() == ref.size());
        CHECK(count_fock_states(n, m, budget) == ref.size());
      }
    }
  }
}

TEST_CASE("cutoff below the ground energy is an empty basis") {
  CHECK_THROWS_AS(build_fock_basis(3, 5, 2.9 * kE1), EmptyBasisError);
  CHECK_NOTHROW(build_fock_basis(3, 5, 3.0 * kE1));
  CHECK(build_fock_basis(3, 5, 3.0 * kE1).size() == 1);
}

TEST_CASE("bad basis requests") {
  CHECK_THROWS_AS(build_fock_basis(-1, 3, 10.0), InvalidParameter);
  CHECK_THROWS_AS(build_fock_basis(2, 0, 10.0), InvalidParameter);
  CHECK_THROWS_AS(build_fock_basis(kMaxFockParticles + 1, 3, 1e6), InvalidParameter);
}

TEST_CASE("basis membership respects the cutoff at any length") {
  const double length = 0.4;
  const ModeBasis modes{length, 8};
  const double cut = 40.0 * modes.energy_quantum();
  const FockBasis b = build_fock_basis(3, 8, cut, length);
  for (const auto& s : b.states()) {
    CHECK(s.particles() == 3);
    CHECK(s.energy(modes) <= cut * (1 + 1e-12));
  }
}

TEST_CASE("mode energies") {
  const ModeBasis m{0.5, 4};
  const auto e = m.mode_energies();
  REQUIRE(e.size() == 4);
  for (int k = 1; k <= 4; ++k) CHECK(e[k - 1] == doctest::Approx(k * k * kPi * kPi / 0.5));
  for (int k = 1; k < 4; ++k) CHECK(e[k] > e[k - 1]);
  CHECK(m.energy(1) == doctest::Approx(2 * kPi * kPi));
}

TEST_CASE("Fock state representation") {
  const int modes[] = {3, 1, 1};
  const FockState s = FockState::from_modes(modes);
  CHECK(s.particles() == 3);
  CHECK(s.occupation(1) == 2);
  CHECK(s.occupation(3) == 1);
  CHECK(s.occupation(2) == 0);
  CHECK(s.quantum_sum() == 11);
  const int occ[] = {2, 0, 1};
  CHECK(FockState::from_occupations(occ) == s);
  // two odd-parity modes? parity counts even modes: none here
  CHECK(s.parity() == 1);
  const int with_even[] = {1, 2};
  CHECK(FockState::from_modes(with_even).parity() == -1);
}

TEST_CASE("parity split keeps every state and the order") {
  const FockBasis b = build_fock_basis(3, 7, 40 * kE1);
  const auto parts = b.split_by_parity();
  CHECK(parts[0].size() + parts[1].size() == b.size());
  for (const auto& s : parts[0].states()) CHECK(s.parity() == 1);
  for (const auto& s : parts[1].states()) CHECK(s.parity() == -1);
  for (int p = 0; p < 2; ++p) {
    for (std::size_t i = 1; i < parts[p].size(); ++i) CHECK(parts[p][i - 1] < parts[p][i]);
  }
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.find(b[i]) == std::int64_t(i));
  const int absent[] = {7, 7, 7};
  CHECK(b.find(FockState::from_modes(absent)) == -1);
}
