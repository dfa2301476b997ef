// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// here. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "szilard/baselines.hpp"
#include "szilard/engine.hpp"
#include "szilard/errors.hpp"
#include "szilard/fock_basis.hpp"
#include "szilard/hamiltonian.hpp"
#include "szilard/oracle.hpp"
#include "szilard/spectrum.hpp"
#include "szilard/thermo.hpp"

using namespace szilard;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const double kW1PerKt = std::log(2.0);

std::shared_ptr<SpectrumSolver> lenient_solver() {
  static auto s = [] {
    SpectrumOptions o;
    o.throw_on_unconverged = false;
    return std::make_shared<SpectrumSolver>(o);
  }();
  return s;
}

// 1. single particle, any coupling, symmetric plan
Outcome single_particle() {
  double worst = 0.0;
  for (double g : {-5.0, -1.0, 0.0, 1.0, 5.0}) {
    for (double t : {0.01, 0.3, 1.0, 10.0}) {
      const ExactMedium m(lenient_solver(), EngineParams{1, g, t * kE1, 1.0});
      const auto w = work_total(m, CyclePlan{0.5, {0.0, 1.0}});
      worst = std::max(worst, std::abs(w.ratio - 1.0));
    }
  }
  return {worst <= 1e-9, fmt("max |W/W1 - 1| = %.2e over 20 (g, T) points (tol 1e-9)", worst)};
}

// 2. two-particle peak
Outcome two_particle_peak() {
  const MediumFactory factory(Baseline::kExact, lenient_solver());
  const auto peak = find_peak(factory, EngineParams{2, -0.1, kE1, 1.0});
  const double p0 = peak.work.probabilities[0];
  const bool ok = std::abs(peak.ratio - 1.0614) <= 0.005 && std::abs(p0 - std::exp(-1.0)) <= 0.01;
  return {ok, fmt("T*=%.5f E1, W/W1=%.6f (1.0614 +/- 0.005), p0=%.5f (1/e +/- 0.01), "
                  "converged=%d |dlnZ|=%.1e",
                  temperature_in_e1(peak.temperature), peak.ratio, p0,
                  int(peak.convergence.converged), peak.convergence.delta_log_z)};
}

// 3. low-temperature plateau for attractive bosons
Outcome low_t_plateau() {
  bool ok = true;
  std::string detail;
  for (int n : {2, 3}) {
    const ExactMedium m(lenient_solver(), EngineParams{n, -1.0, 0.02 * kE1, 1.0});
    const auto w = work_total(m, optimize_removals(m, 0.5));
    const auto c = m.convergence();
    ok = ok && std::abs(w.ratio - 1.0) <= 0.01;
    detail += fmt("N=%d W/W1=%.6f (|dlnZ|=%.1e) ", n, w.ratio, c.delta_log_z);
  }
  return {ok, detail + "(1 +/- 0.01)"};
}

// 4. classical four-particle optimum
Outcome classical_four() {
  const ClassicalMedium c(4, kE1);
  const auto best = optimize_insertion(c);
  const bool ok = std::abs(best.work.ratio - 0.886) <= 0.002 && std::abs(best.insertion - 0.5) > 0.01;
  return {ok, fmt("W/W1=%.5f (0.886 +/- 0.002) at ins=%.4f (asymmetric: |ins-1/2|>0.01)",
                  best.work.ratio, best.insertion)};
}

// 5. noninteracting pair at low temperature
Outcome ideal_pair() {
  const IdealMedium m(2, 0.01 * kE1, Statistics::kBose);
  const auto w = work_total(m, optimize_removals(m, 0.5));
  const double p0 = w.probabilities[0];
  const bool ok = std::abs(p0 - 1.0 / 3.0) <= 0.005 && std::abs(w.ratio - 1.057) <= 0.005;
  return {ok, fmt("p0=%.6f (1/3 +/- 0.005), W/W1=%.6f (1.057 +/- 0.005)", p0, w.ratio)};
}

// 6. four attractive bosons
Outcome four_attractive() {
  const MediumFactory factory(Baseline::kExact, lenient_solver());
  const EngineParams at{4, -0.1, 0.243 * kE1, 1.0};
  const auto m = factory.make(at);
  const auto w = work_total(*m, optimize_removals(*m, 0.5));
  const auto conv = m->convergence();
  const double p0 = w.probabilities[0], p4 = w.probabilities[4];
  const auto peak = find_peak(factory, at);
  const bool ok = conv.converged && std::abs(p0 - 0.30) <= 0.03 && std::abs(p4 - 0.30) <= 0.03 &&
                  peak.ratio >= 1.10;
  const bool target = std::abs(peak.ratio - 1.12) <= 0.02;
  return {ok, fmt("at 0.243 E1: p0=%.4f p4=%.4f (0.30 +/- 0.03), converged=%d |dlnZ|=%.1e; "
                  "max over T: W/W1=%.5f at T=%.4f E1 (>= 1.10; target 1.12 +/- 0.02 %s)",
                  p0, p4, int(conv.converged), conv.delta_log_z, peak.ratio,
                  temperature_in_e1(peak.temperature), target ? "met" : "missed")};
}

// 7. peak temperature scaling for three particles
Outcome peak_scaling() {
  const MediumFactory factory(Baseline::kExact, lenient_solver());
  bool ok = true;
  std::string detail;
  double prev = 0.0;
  for (double g : {-0.05, -0.1, -0.2}) {
    const auto peak = find_peak(factory, EngineParams{3, g, kE1, 1.0});
    const double estimate = 0.608 * 2 * std::abs(g) * kE1;
    const double rel = peak.temperature / estimate;
    ok = ok && rel >= 0.5 && rel <= 1.5 && peak.temperature > prev;
    prev = peak.temperature;
    detail += fmt("g=%.2f: T*=%.4f E1 est=%.4f E1 ratio=%.2f; ", g,
                  temperature_in_e1(peak.temperature), temperature_in_e1(estimate), rel);
  }
  return {ok, detail + "(T*/est in [0.5, 1.5], increasing in |g|)"};
}

// 8. quadratic residual of first-order perturbation theory
Outcome perturbation_residual() {
  SpectrumSolver solver;
  const double l = 0.5;
  const int m = 24;
  const long budget = 600;
  std::vector<double> res;
  for (double g : {-0.02, -0.04, -0.08}) {
    const auto s = solver.unit_box_spectrum(3, g * l, m, budget, 1.0);
    const double exact = s.energies.front() / (l * l);
    res.push_back(std::abs(exact - perturbative_energy(3, 3, l, g)));
  }
  const double r1 = res[1] / res[0], r2 = res[2] / res[1];
  const bool ok = r1 >= 3.5 && r1 <= 4.5 && r2 >= 3.5 && r2 <= 4.5;
  return {ok, fmt("residuals %.3e %.3e %.3e, ratios %.4f %.4f (in [3.5, 4.5])", res[0], res[1],
                  res[2], r1, r2)};
}

// 9. exact diagonalization against the finite-difference oracle
Outcome oracle_equivalence() {
  auto& solver = *lenient_solver();
  double worst = 0.0;
  std::string where;
  for (double g : {-1.0, -0.5, 0.5, 1.0}) {
    for (double l : {0.3, 0.5, 1.0}) {
      const double t = 0.6 * kE1 / (l * l);
      const auto s = solver.subsystem_spectrum(2, l, g, t);
      const auto grid = two_particle_grid_energies(l, g, GridSpec{100, l}, 5);
      for (int i = 0; i < 5; ++i) {
        const double rel = std::abs(s.energies.at(i) / grid[i] - 1.0);
        if (rel > worst) {
          worst = rel;
          where = fmt("g=%.1f l=%.1f level %d", g, l, i);
        }
      }
    }
  }
  return {worst <= 0.01,
          fmt("max relative deviation %.2e (%s) over 60 levels (tol 1e-2)", worst, where.c_str())};
}

// 10. Tonks-Girardeau limit for two particles. Strong contact interactions
// converge slowly in a mode basis, so the ground energy is taken from a large
// fixed basis and its change under a fourfold smaller cutoff is reported.
Outcome tonks() {
  SpectrumSolver solver;
  const double fermi = 5.0 * kPi * kPi / 2.0;
  const long budget = 10000, small = 2500;
  const auto modes = [](long b) { return int(std::floor(std::sqrt(double(b - 1)))); };
  std::vector<double> e;
  double drift = 0.0;
  for (double g : {10.0, 25.0, 50.0}) {
    e.push_back(solver.unit_box_spectrum(2, g, modes(budget), budget, 1.0).ground_energy());
    drift = std::max(drift, solver.unit_box_spectrum(2, g, modes(small), small, 1.0)
                                    .ground_energy() - e.back());
  }
  const double gap = (fermi - e[2]) / fermi;
  const bool ok = e[2] <= fermi && gap <= 0.05 && e[0] < e[1] && e[1] < e[2];
  return {ok, fmt("E0(g=10,25,50) = %.4f %.4f %.4f, fermion limit %.4f, "
                  "g=50 lies %.2f%% below (tol 5%%); basis drift %.1e",
                  e[0], e[1], e[2], fermi, 100 * gap, drift)};
}

// 11. pitchfork bifurcation of the ideal Bose engine
Outcome pitchfork() {
  InsertionOptions opts;
  const auto ins_at = [&](double t) {
    return optimize_insertion(IdealMedium(4, t * kE1, Statistics::kBose), opts).insertion;
  };
  bool ok = true;
  std::string detail;
  for (double t : {1.0, 10.0, 20.0, 30.0}) {
    const double x = ins_at(t);
    ok = ok && std::abs(x - 0.5) <= opts.bifurcation_threshold;
  }
  for (double t : {70.0, 85.0, 100.0}) {
    const double x = ins_at(t);
    ok = ok && std::abs(x - 0.5) > 0.01;
    detail += fmt("ins*(%g E1)=%.4f ", t, x);
  }
  // onset: symmetric below, broken above
  double lo = 30.0, hi = 70.0;
  while (hi - lo > 0.25) {
    const double mid = 0.5 * (lo + hi);
    (std::abs(ins_at(mid) - 0.5) > opts.bifurcation_threshold ? hi : lo) = mid;
  }
  const double onset = 0.5 * (lo + hi);
  ok = ok && std::abs(onset - 50.0) <= 10.0;
  return {ok, detail + fmt("onset %.2f E1 (50 +/- 10)", onset)};
}

// 12. property suite
Outcome properties() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double norm = 0, mirror = 0, bound = -1e9, closed = 0, variational = -1e9, free_err = 0;
  std::vector<std::unique_ptr<Medium>> media;
  for (int i = 0; i < 4; ++i) {
    const int n = i < 3 ? 2 : 3;
    const double g = -1.0 + 2.0 * u(rng);
    const double t = (0.2 + 2.0 * u(rng)) * kE1;
    media.push_back(std::make_unique<ExactMedium>(lenient_solver(), EngineParams{n, g, t, 1.0}));
  }
  media.push_back(std::make_unique<IdealMedium>(4, 5 * kE1, Statistics::kBose));
  media.push_back(std::make_unique<ClassicalMedium>(3, kE1));
  for (const auto& m : media) {
    const int n = m->particles();
    // every new wall position costs a diagonalization for N = 3
    const int trials = n == 3 && m->name() == "exact" ? 4 : 20;
    for (int trial = 0; trial < trials; ++trial) {
      CyclePlan plan;
      plan.insertion = 0.02 + 0.96 * u(rng);
      for (int k = 0; k <= n; ++k) plan.removals.push_back(u(rng));
      const auto d = outcome_distribution(*m, plan.insertion);
      const auto r = outcome_distribution(*m, 1.0 - plan.insertion);
      double s = 0;
      for (int k = 0; k <= n; ++k) {
        s += d.probabilities[k];
        mirror = std::max(mirror, std::abs(d.probabilities[k] - r.probabilities[n - k]));
      }
      norm = std::max(norm, std::abs(s - 1.0));
      const auto w = work_total(*m, plan);
      bound = std::max(bound, w.w_total - w.info);
      closed = std::max(closed, std::abs(w.w_total - w.closed_form));
    }
  }
  SpectrumSolver solver;
  for (double g : {-1.0, 1.0}) {
    std::vector<double> prev;
    for (long budget : {40L, 80L, 160L}) {
      const int modes = int(std::floor(std::sqrt(double(budget - 2))));
      const auto s = solver.unit_box_spectrum(3, g, modes, budget,
                                              std::numeric_limits<double>::infinity());
      for (std::size_t i = 0; i < std::min<std::size_t>(prev.size(), 30); ++i) {
        variational = std::max(variational, s.energies[i] - prev[i]);
      }
      prev = s.energies;
    }
  }
  {
    const int modes = 9;
    const long budget = 90;
    const auto s = solver.unit_box_spectrum(3, 0.0, modes, budget,
                                            std::numeric_limits<double>::infinity());
    std::vector<double> ref;
    const FockBasis basis = build_fock_basis(3, modes, double(budget) * kE1);
    for (const auto& st : basis.states()) {
      ref.push_back(st.energy(ModeBasis{1.0, modes}));
    }
    std::sort(ref.begin(), ref.end());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      free_err = std::max(free_err, std::abs(s.energies.at(i) - ref[i]));
    }
  }
  const bool ok = norm <= 1e-12 && mirror <= 1e-12 && bound <= 1e-10 && closed <= 1e-9 &&
                  variational <= 1e-10 && free_err <= 1e-10;
  return {ok, fmt("|sum p - 1|=%.1e mirror=%.1e max(W-I)=%.1e |step-closed|=%.1e "
                  "max dE(basis growth)=%.1e g=0 error=%.1e",
                  norm, mirror, bound, closed, variational, free_err)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, single_particle},   {2, two_particle_peak},     {3, low_t_plateau},
      {4, classical_four},    {5, ideal_pair},            {6, four_attractive},
      {7, peak_scaling},      {8, perturbation_residual}, {9, oracle_equivalence},
      {10, tonks},            {11, pitchfork},            {12, properties},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s  %s  [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
