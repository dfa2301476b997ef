#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "szilard/baselines.hpp"
#include "szilard/errors.hpp"
#include "szilard/fock_basis.hpp"
#include "szilard/hamiltonian.hpp"
#include "szilard/oracle.hpp"
#include "szilard/spectrum.hpp"

using namespace szilard;
namespace fs = std::filesystem;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

SpectrumOptions lenient() {
  SpectrumOptions o;
  o.throw_on_unconverged = false;
  return o;
}
}  // namespace

TEST_CASE("empty and single-particle subsystems") {
  SpectrumSolver solver;
  const Spectrum s0 = solver.subsystem_spectrum(0, 0.4, -1.0, kE1);
  CHECK(s0.energies == std::vector<double>{0.0});

  const double l = 0.7;
  const Spectrum s1 = solver.subsystem_spectrum(1, l, -1.0, 2 * kE1);
  const double q = kPi * kPi / (2 * l * l);
  for (std::size_t k = 0; k < s1.energies.size(); ++k) {
    CHECK(s1.energies[k] == doctest::Approx(q * double((k + 1) * (k + 1))));
  }
  // the last retained level already has negligible weight
  CHECK(std::exp(-(s1.complete_below - s1.ground_energy()) / (2 * kE1)) < 1e-12);
  CHECK(solver.stats().diagonalizations == 0);
}

TEST_CASE("bad subsystem requests") {
  SpectrumSolver solver;
  CHECK_THROWS_AS(solver.subsystem_spectrum(-1, 0.5, 0.0, kE1), InvalidParameter);
  CHECK_THROWS_AS(solver.subsystem_spectrum(2, 0.0, 0.0, kE1), DomainError);
  CHECK_THROWS_AS(solver.subsystem_spectrum(2, 1.5, 0.0, kE1), DomainError);
}

TEST_CASE("noninteracting spectra are exact") {
  SpectrumSolver solver;
  for (int n = 2; n <= 4; ++n) {
    const int m = 8;
    const long budget = 60;
    const Spectrum s = solver.unit_box_spectrum(n, 0.0, m, budget, kInf);
    std::vector<double> ref;
    const FockBasis basis = build_fock_basis(n, m, double(budget) * kE1);
    for (const auto& st : basis.states())
      ref.push_back(st.energy(ModeBasis{1.0, m}));
    std::sort(ref.begin(), ref.end());
    REQUIRE(s.energies.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(s.energies[i] - ref[i]) < 1e-10);
  }
}

TEST_CASE("enlarging the basis never raises a level") {
  SpectrumSolver solver;
  for (double g : {-2.0, -0.1, 0.7, 5.0}) {
    for (int n : {2, 3}) {
      std::vector<double> prev;
      for (long budget : {30L, 45L, 70L, 110L}) {
        const int m = int(std::floor(std::sqrt(double(budget - (n - 1)))));
        const Spectrum s = solver.unit_box_spectrum(n, g, m, budget, kInf);
        if (!prev.empty()) {
          for (std::size_t i = 0; i < std::min<std::size_t>(20, prev.size()); ++i) {
            CAPTURE(g);
            CAPTURE(n);
            CAPTURE(budget);
            CHECK(s.energies[i] - prev[i] <= 1e-10);
          }
        }
        prev = s.energies;
      }
    }
  }
}

TEST_CASE("ground-state slope at zero coupling") {
  SpectrumSolver solver;
  const double h = 1e-4;
  for (int n : {2, 3, 4}) {
    for (double l : {1.0, 0.5}) {
      auto e0 = [&](double g) {
        return scale_spectrum(solver.unit_box_spectrum(n, g * l, 6, 40, kInf).energies, l)[0];
      };
      const double slope = (e0(h) - e0(-h)) / (2 * h);
      const double expected = 0.5 * n * (n - 1) * delta_matrix_element(1, 1, 1, 1, l);
      CAPTURE(n);
      CAPTURE(l);
      CHECK(std::abs(slope / expected - 1.0) < 1e-4);
    }
  }
}

TEST_CASE("three attractive bosons: ED lies below first order") {
  SpectrumSolver solver;
  const double l = 0.5;
  const double g = -0.1;
  const Spectrum s = solver.subsystem_spectrum(3, l, g, 0.3 * kE1);
  CHECK(s.converged);
  const double pert = 3 * kPi * kPi / (2 * l * l) + g * 3 * delta_matrix_element(1, 1, 1, 1, l);
  CHECK(s.ground_energy() <= pert);
  CHECK(pert - s.ground_energy() < 1e-3 * std::abs(pert));
  CHECK(perturbative_energy(3, 3, l, g) == doctest::Approx(pert).epsilon(1e-12));
}

TEST_CASE("subsystem spectra are scaled unit-box spectra") {
  SpectrumSolver solver(lenient());
  const BasisPlan p = solver.plan(2, -1.0, kE1);
  const Spectrum a = solver.subsystem_spectrum(2, 0.5, -1.0, kE1);
  const auto before = solver.stats();
  const Spectrum u = solver.unit_box_spectrum(2, -0.5, p.n_modes, p.quantum_budget, 1.0);
  CHECK(solver.stats().diagonalizations == before.diagonalizations);
  CHECK(solver.stats().memory_hits == before.memory_hits + 1);
  CHECK(a.key == u.key);
  CHECK(a.ground_energy() == doctest::Approx(4.0 * u.ground_energy()).epsilon(1e-14));
}

TEST_CASE("two-particle levels agree with the grid oracle") {
  SpectrumSolver solver(lenient());
  for (double g : {-1.0, 1.0}) {
    const Spectrum s = solver.subsystem_spectrum(2, 1.0, g, 5 * kE1);
    const auto grid = two_particle_grid_energies(1.0, g, GridSpec{100, 1.0}, 5);
    for (int i = 0; i < 5; ++i) {
      CAPTURE(g);
      CAPTURE(i);
      CHECK(std::abs(s.energies[i] / grid[i] - 1.0) < 0.01);
    }
  }
}

TEST_CASE("temperature buckets") {
  for (double t : {0.01, 0.3, 1.0, 4.9, 100.0}) {
    const double b = SpectrumSolver::temperature_bucket(t);
    CHECK(b >= t);
    CHECK(b < t * std::pow(2.0, 0.25) * (1 + 1e-12));
    CHECK(SpectrumSolver::temperature_bucket(b) == doctest::Approx(b));
  }
}

TEST_CASE("persistent store serves later solvers") {
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() / ("szilard-spectrum-" + std::to_string(rd()));
  {
    SpectrumSolver first(lenient(), std::make_shared<SpectrumStore>(dir));
    first.subsystem_spectrum(2, 0.6, -0.5, kE1);
    first.subsystem_spectrum(3, 0.6, -0.5, kE1);
    CHECK(first.stats().diagonalizations > 0);
  }
  SpectrumSolver second(lenient(), std::make_shared<SpectrumStore>(dir));
  const Spectrum s = second.subsystem_spectrum(3, 0.6, -0.5, kE1);
  second.subsystem_spectrum(2, 0.6, -0.5, kE1);
  CHECK(second.stats().diagonalizations == 0);
  CHECK(second.stats().store_hits > 0);

  SpectrumSolver fresh(lenient());
  const Spectrum ref = fresh.subsystem_spectrum(3, 0.6, -0.5, kE1);
  REQUIRE(ref.energies.size() == s.energies.size());
  for (std::size_t i = 0; i < s.energies.size(); ++i) CHECK(s.energies[i] == ref.energies[i]);
  fs::remove_all(dir);
}

TEST_CASE("unconverged bases are flagged or rejected") {
  SpectrumOptions strict;
  strict.z_tol = 1e-14;
  strict.max_escalations = 1;
  SpectrumSolver throwing(strict);
  CHECK_THROWS_AS(throwing.subsystem_spectrum(2, 1.0, -1.0, kE1), ConvergenceError);
  strict.throw_on_unconverged = false;
  SpectrumSolver flagging(strict);
  const Spectrum s = flagging.subsystem_spectrum(2, 1.0, -1.0, kE1);
  CHECK_FALSE(s.converged);
  CHECK(s.delta_log_z > 1e-14);
}

TEST_CASE("log partition sum") {
  const std::vector<double> e = {1.0, 2.0, 2.0};
  const double t = 0.7;
  CHECK(log_partition_sum(e, t) ==
        doctest::Approx(std::log(std::exp(-1 / t) + 2 * std::exp(-2 / t))));
  const std::vector<double> deep = {1000.0, 1001.0};
  CHECK(std::isfinite(log_partition_sum(deep, 0.01)));
}
