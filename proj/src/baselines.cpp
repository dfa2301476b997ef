#include "szilard/baselines.hpp"

#include <cmath>
#include <limits>

#include "szilard/errors.hpp"

namespace szilard {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// ln[C(N,n) x^n (1-x)^(N-n)] with 0^0 = 1.
double log_binomial_pmf(int total, int n, double x) {
  double v = log_binomial(total, n);
  if (n > 0) v += n * std::log(x);
  if (total - n > 0) v += (total - n) * std::log1p(-x);
  return v;
}

double lse2(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}
}  // namespace

double classical_work(int n_particles, double insertion) {
  if (n_particles < 1) throw InvalidParameter("need at least one particle");
  if (!(insertion > 0.0 && insertion < 1.0)) throw DomainError("insertion outside (0, 1)");
  double w = 0.0;
  for (int n = 0; n <= n_particles; ++n) {
    const double lp = log_binomial_pmf(n_particles, n, insertion);
    const double lrem = log_binomial_pmf(n_particles, n, double(n) / n_particles);
    w -= std::exp(lp) * (lp - lrem);
  }
  return w;
}

std::vector<double> box_levels(double length, double temperature, int n,
                               double truncation_tol) {
  if (!(length > 0.0)) throw DomainError("box length must be positive");
  const double q = kPi * kPi / (2.0 * length * length);
  const double window = temperature * std::log(1.0 / truncation_tol);
  // levels k with (k^2 - 1) q <= window, and at least n + 1 of them
  const int k_max = std::max(n + 1, int(std::ceil(std::sqrt(1.0 + window / q))) + 1);
  std::vector<double> e(k_max);
  for (int k = 1; k <= k_max; ++k) e[k - 1] = q * k * k;
  return e;
}

std::vector<double> ideal_canonical_log_z_table(int n, std::span<const double> eps,
                                                double temperature, Statistics statistics,
                                                double truncation_tol) {
  if (n < 0) throw InvalidParameter("negative particle count");
  if (!(temperature > 0.0)) throw InvalidParameter("temperature must be positive");
  if (eps.empty()) throw InvalidParameter("no single-particle levels");
  const double beta = 1.0 / temperature;
  double lo = eps[0], hi = eps[0];
  for (double e : eps) {
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  if (eps.size() > 1 && std::exp(-beta * (hi - lo)) > truncation_tol) {
    throw TruncationError("too few single-particle levels for this temperature",
                          temperature * std::log(1.0 / truncation_tol));
  }
  std::vector<double> lz(n + 1, kNegInf);
  lz[0] = 0.0;
  if (statistics == Statistics::kBose) {
    // Z_m = (1/m) sum_k Z_1(k beta) Z_{m-k}; all terms positive
    std::vector<double> lz1(n + 1);
    for (int k = 1; k <= n; ++k) {
      double s = 0.0;
      for (double e : eps) s += std::exp(-k * beta * (e - lo));
      lz1[k] = -k * beta * lo + std::log(s);
    }
    for (int m = 1; m <= n; ++m) {
      double acc = kNegInf;
      for (int k = 1; k <= m; ++k) acc = lse2(acc, lz1[k] + lz[m - k]);
      lz[m] = acc - std::log(double(m));
    }
  } else {
    if (std::size_t(n) > eps.size()) {
      throw TruncationError("fewer levels than fermions", 0.0);
    }
    // elementary symmetric polynomials of x_j = exp(-beta e_j), in log space
    for (double e : eps) {
      const double lx = -beta * e;
      for (int m = n; m >= 1; --m) lz[m] = lse2(lz[m], lx + lz[m - 1]);
    }
  }
  return lz;
}

double ideal_canonical_log_z(int n, std::span<const double> eps, double temperature,
                             Statistics statistics, double truncation_tol) {
  return ideal_canonical_log_z_table(n, eps, temperature, statistics, truncation_tol)[n];
}

PerturbativeSpectrumParams perturbative_spectrum_params(int n_left, int n_particles,
                                                        double wall, double g) {
  if (n_left < 0 || n_left > n_particles) throw InvalidParameter("outcome out of range");
  if (!(wall > 0.0 && wall < 1.0)) throw DomainError("wall outside (0, 1)");
  PerturbativeSpectrumParams p;
  p.n_left = n_left;
  p.n_particles = n_particles;
  p.wall = wall;
  p.coupling = g;
  const int n_right = n_particles - n_left;
  const double r = 1.0 - wall;
  p.unperturbed = n_left * kE1 / (wall * wall) + n_right * kE1 / (r * r);
  p.shift = 0.5 * n_left * (n_left - 1) * 1.5 * g / wall +
            0.5 * n_right * (n_right - 1) * 1.5 * g / r;
  p.valid = std::abs(g) * (n_particles - 1) / (kPi * kPi) <= kPerturbativeCouplingLimit;
  return p;
}

double perturbative_energy(int n_left, int n_particles, double wall, double g) {
  const auto p = perturbative_spectrum_params(n_left, n_particles, wall, g);
  return p.unperturbed + p.shift;
}

double peak_temperature_estimate(int n_particles, double g) {
  if (!(g < 0.0)) throw DomainError("peak temperature estimate needs attractive coupling");
  return -3.0 * (n_particles - 1) * g;
}

IdealMedium::IdealMedium(int n_particles, double temperature, Statistics statistics)
    : n_(n_particles), t_(temperature), stats_(statistics) {
  if (n_ < 1) throw InvalidParameter("need at least one particle");
  if (!(t_ > 0.0)) throw InvalidParameter("temperature must be positive");
}

std::string IdealMedium::name() const {
  return stats_ == Statistics::kBose ? "ideal-bose" : "ideal-fermi";
}

double IdealMedium::subsystem_log_z(int n, double length) const {
  if (length < 0.0 || length > 1.0) throw DomainError("subsystem length outside [0, 1]");
  if (n == 0) return 0.0;
  if (length == 0.0) return kNegInf;
  const auto eps = box_levels(length, t_, n);
  return ideal_canonical_log_z(n, eps, t_, stats_);
}

PerturbativeMedium::PerturbativeMedium(int n_particles, double coupling, double temperature)
    : n_(n_particles), g_(coupling), t_(temperature) {
  if (n_ < 1) throw InvalidParameter("need at least one particle");
  if (!(t_ > 0.0)) throw InvalidParameter("temperature must be positive");
}

double PerturbativeMedium::subsystem_log_z(int n, double length) const {
  if (length < 0.0 || length > 1.0) throw DomainError("subsystem length outside [0, 1]");
  if (n == 0) return 0.0;
  if (length == 0.0) return kNegInf;
  const double e = n * kE1 / (length * length) + 0.5 * n * (n - 1) * 1.5 * g_ / length;
  return -e / t_;
}

bool PerturbativeMedium::valid() const {
  return std::abs(g_) * (n_ - 1) / (kPi * kPi) <= kPerturbativeCouplingLimit && t_ <= kE1;
}

ClassicalMedium::ClassicalMedium(int n_particles, double temperature)
    : n_(n_particles), t_(temperature) {
  if (n_ < 1) throw InvalidParameter("need at least one particle");
}

double ClassicalMedium::subsystem_log_z(int n, double length) const {
  if (length < 0.0 || length > 1.0) throw DomainError("subsystem length outside [0, 1]");
  if (n == 0) return 0.0;
  if (length == 0.0) return kNegInf;
  return n * std::log(length) - std::lgamma(n + 1.0);
}

}  // namespace szilard
