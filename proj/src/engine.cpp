#include "szilard/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "szilard/baselines.hpp"
#include "szilard/errors.hpp"
#include "szilard/search.hpp"

namespace szilard {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_plan(const Medium& medium, const CyclePlan& plan) {
  if (!(plan.insertion > 0.0 && plan.insertion < 1.0)) {
    throw DomainError("insertion position outside (0, 1)");
  }
  if (int(plan.removals.size()) != medium.particles() + 1) {
    throw InvalidParameter("plan needs one removal position per outcome");
  }
  for (double r : plan.removals) {
    if (r < 0.0 || r > 1.0) throw DomainError("removal position outside [0, 1]");
  }
}

std::vector<double> outcome_log_z(const Medium& medium, double wall) {
  std::vector<double> lz(medium.particles() + 1);
  for (int n = 0; n <= medium.particles(); ++n) lz[n] = composite_log_z(medium, n, wall);
  return lz;
}

// p_n * x with 0 * anything = 0
double weighted(double p, double x) { return p > 0.0 ? p * x : 0.0; }

}  // namespace

double work_insertion(const Medium& medium, double insertion) {
  if (!(insertion > 0.0 && insertion < 1.0)) throw DomainError("insertion outside (0, 1)");
  const double full = medium.subsystem_log_z(medium.particles(), 1.0);
  return log_sum_exp(outcome_log_z(medium, insertion)) - full;
}

double work_expansion(const Medium& medium, const CyclePlan& plan) {
  check_plan(medium, plan);
  const auto ins = outcome_distribution(medium, plan.insertion);
  double w = 0.0;
  for (int n = 0; n <= medium.particles(); ++n) {
    const double p = ins.probabilities[n];
    if (!(p > 0.0)) continue;
    w += p * (composite_log_z(medium, n, plan.removals[n]) - ins.per_outcome_log_z[n]);
  }
  return w;
}

double work_removal(const Medium& medium, const CyclePlan& plan) {
  check_plan(medium, plan);
  const auto ins = outcome_distribution(medium, plan.insertion);
  const double full = medium.subsystem_log_z(medium.particles(), 1.0);
  // sum_n p_n (full - ln Z(rem_n)), split so that rem_n = ins gives exactly -W_insert
  double w = 0.0;
  for (int n = 0; n <= medium.particles(); ++n) {
    const double p = ins.probabilities[n];
    if (!(p > 0.0)) continue;
    w += p * (ins.log_z_sum - log_sum_exp(outcome_log_z(medium, plan.removals[n])));
  }
  return (full - ins.log_z_sum) + w;
}

WorkBreakdown work_total(const Medium& medium, const CyclePlan& plan) {
  check_plan(medium, plan);
  const int total = medium.particles();
  const double full = medium.subsystem_log_z(total, 1.0);
  const auto ins = outcome_distribution(medium, plan.insertion);
  WorkBreakdown w;
  w.probabilities = ins.probabilities;
  w.w_insert = ins.log_z_sum - full;
  for (int n = 0; n <= total; ++n) {
    const double p = ins.probabilities[n];
    if (!(p > 0.0)) continue;
    const auto rem = outcome_log_z(medium, plan.removals[n]);
    const double rem_sum = log_sum_exp(rem);
    w.w_expand += weighted(p, rem[n] - ins.per_outcome_log_z[n]);
    w.w_remove += weighted(p, ins.log_z_sum - rem_sum);
    const double log_p_ins = ins.per_outcome_log_z[n] - ins.log_z_sum;
    const double log_p_rem = rem[n] - rem_sum;
    w.closed_form -= weighted(p, log_p_ins - log_p_rem);
  }
  w.w_remove = (full - ins.log_z_sum) + w.w_remove;
  w.w_total = w.w_insert + w.w_measure + w.w_expand + w.w_remove;
  w.info = shannon_information(w.probabilities);
  w.ratio = w.w_total / kLn2;
  return w;
}

std::vector<double> optimal_removals(const Medium& medium, const RemovalOptions& options) {
  const int total = medium.particles();
  std::vector<double> removals(total + 1, 0.5);
  removals[0] = 0.0;
  removals[total] = 1.0;
  for (int n = 1; n < total; ++n) {
    if (options.mirror && 2 * n > total) {
      removals[n] = 1.0 - removals[total - n];
      continue;
    }
    const auto log_p = [&](double wall) {
      const auto lz = outcome_log_z(medium, wall);
      const double s = log_sum_exp(lz);
      return s == kNegInf ? kNegInf : lz[n] - s;
    };
    const Extremum e =
        grid_then_golden_maximize(log_p, 0.0, 1.0, options.grid_points, options.tolerance);
    removals[n] = e.x;
    // a mirror-symmetric medium has a stationary point at the centre for n = N/2
    if (options.mirror && 2 * n == total && log_p(0.5) >= e.value) removals[n] = 0.5;
  }
  return removals;
}

CyclePlan optimize_removals(const Medium& medium, double insertion,
                            const RemovalOptions& options) {
  if (!(insertion > 0.0 && insertion < 1.0)) throw DomainError("insertion outside (0, 1)");
  return CyclePlan{insertion, optimal_removals(medium, options)};
}

InsertionResult optimize_insertion(const Medium& medium, const InsertionOptions& options) {
  if (!(options.lo > 0.0 && options.hi < 1.0 && options.lo < 0.5 && options.hi > 0.5)) {
    throw InvalidParameter("insertion grid must lie in (0, 1) around 1/2");
  }
  if (options.half_points < 1) throw InvalidParameter("insertion grid too small");
  const auto removals = optimal_removals(medium, options.removal);
  const auto ratio_at = [&](double ins) {
    return work_total(medium, CyclePlan{ins, removals}).ratio;
  };

  const int h = options.half_points;
  std::vector<double> xs;
  for (int i = -h; i <= h; ++i) {
    const double x = i < 0 ? 0.5 + (0.5 - options.lo) * i / h : 0.5 + (options.hi - 0.5) * i / h;
    xs.push_back(x);
  }
  std::vector<double> fs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = ratio_at(xs[i]);

  InsertionResult out;
  for (std::size_t i : local_maxima(fs)) {
    double x = xs[i], f = fs[i];
    const double a = xs[i == 0 ? 0 : i - 1];
    const double b = xs[std::min(i + 1, xs.size() - 1)];
    if (b > a) {
      const Extremum e = golden_section_maximize(ratio_at, a, b, options.tolerance);
      if (e.value > f) {
        x = e.x;
        f = e.value;
      }
    }
    out.local_maxima.emplace_back(x, f);
  }
  std::sort(out.local_maxima.begin(), out.local_maxima.end());
  // global maximum; near-ties go to the candidate closest to the centre
  const double best = std::max_element(out.local_maxima.begin(), out.local_maxima.end(),
                                       [](auto& l, auto& r) { return l.second < r.second; })
                          ->second;
  double chosen = 0.5;
  double dist = std::numeric_limits<double>::infinity();
  for (const auto& [x, f] : out.local_maxima) {
    if (f >= best - 1e-12 * std::max(1.0, std::abs(best)) && std::abs(x - 0.5) < dist) {
      dist = std::abs(x - 0.5);
      chosen = x;
    }
  }
  out.insertion = chosen;
  out.plan = CyclePlan{chosen, removals};
  out.work = work_total(medium, out.plan);
  out.bifurcated = std::abs(chosen - 0.5) > options.bifurcation_threshold;
  return out;
}

std::string baseline_name(Baseline b) {
  switch (b) {
    case Baseline::kExact: return "exact";
    case Baseline::kIdealBose: return "ideal-bose";
    case Baseline::kIdealFermi: return "ideal-fermi";
    case Baseline::kPerturbative: return "perturbative";
    case Baseline::kClassical: return "classical";
  }
  return "exact";
}

std::optional<Baseline> parse_baseline(const std::string& name) {
  for (Baseline b : {Baseline::kExact, Baseline::kIdealBose, Baseline::kIdealFermi,
                     Baseline::kPerturbative, Baseline::kClassical}) {
    if (baseline_name(b) == name) return b;
  }
  return std::nullopt;
}

MediumFactory::MediumFactory(Baseline baseline, std::shared_ptr<SpectrumSolver> solver)
    : baseline_(baseline), solver_(std::move(solver)) {
  if (baseline_ == Baseline::kExact && !solver_) {
    SpectrumOptions opts;
    opts.throw_on_unconverged = false;
    solver_ = std::make_shared<SpectrumSolver>(opts);
  }
}

std::unique_ptr<Medium> MediumFactory::make(const EngineParams& p,
                                            double spectrum_temperature) const {
  if (p.box_length != 1.0) throw InvalidParameter("engine parameters must be normalized");
  switch (baseline_) {
    case Baseline::kExact: return std::make_unique<ExactMedium>(solver_, p, spectrum_temperature);
    case Baseline::kIdealBose:
      return std::make_unique<IdealMedium>(p.n_particles, p.temperature, Statistics::kBose);
    case Baseline::kIdealFermi:
      return std::make_unique<IdealMedium>(p.n_particles, p.temperature, Statistics::kFermi);
    case Baseline::kPerturbative:
      return std::make_unique<PerturbativeMedium>(p.n_particles, p.coupling, p.temperature);
    case Baseline::kClassical:
      return std::make_unique<ClassicalMedium>(p.n_particles, p.temperature);
  }
  return nullptr;
}

std::string axis_name(ScanAxis axis) {
  switch (axis) {
    case ScanAxis::kTemperature: return "t";
    case ScanAxis::kCoupling: return "g";
    case ScanAxis::kInsertion: return "ins";
  }
  return "t";
}

std::optional<ScanAxis> parse_axis(const std::string& name) {
  if (name == "t" || name == "temperature") return ScanAxis::kTemperature;
  if (name == "g" || name == "coupling") return ScanAxis::kCoupling;
  if (name == "ins" || name == "insertion") return ScanAxis::kInsertion;
  return std::nullopt;
}

std::vector<double> axis_values(double lo, double hi, int count, bool geometric) {
  if (count < 1) throw InvalidParameter("scan needs at least one point");
  if (count == 1) return {lo};
  if (geometric && !(lo > 0.0 && hi > 0.0)) {
    throw InvalidParameter("geometric spacing needs positive bounds");
  }
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    const double f = double(i) / (count - 1);
    v[i] = geometric ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
  }
  v.back() = hi;
  return v;
}

namespace {

ScanPoint evaluate_point(const MediumFactory& factory, const EngineParams& base,
                         const ScanOptions& options, double value, double t_context) {
  ScanPoint pt;
  pt.axis_value = value;
  pt.params = base;
  double insertion = options.insertion;
  switch (options.axis) {
    case ScanAxis::kTemperature: pt.params.temperature = value; break;
    case ScanAxis::kCoupling: pt.params.coupling = value; break;
    case ScanAxis::kInsertion: insertion = value; break;
  }
  try {
    const auto medium = factory.make(pt.params, t_context);
    if (options.optimize_insertion && options.axis != ScanAxis::kInsertion) {
      const auto r = optimize_insertion(*medium, options.insertion_options);
      pt.plan = r.plan;
      pt.work = r.work;
    } else {
      pt.plan = optimize_removals(*medium, insertion, options.insertion_options.removal);
      pt.work = work_total(*medium, pt.plan);
    }
    pt.convergence = medium->convergence();
    pt.ok = true;
  } catch (const std::exception& e) {
    pt.error = e.what();
  }
  return pt;
}

}  // namespace

std::vector<ScanPoint> scan(const MediumFactory& factory, const EngineParams& base,
                            const ScanOptions& options) {
  std::vector<ScanPoint> out(options.values.size());
  double t_context = base.temperature;
  if (options.axis == ScanAxis::kTemperature && options.shared_spectrum_temperature) {
    for (double t : options.values) t_context = std::max(t_context, t);
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < out.size(); i = next++) {
      out[i] = evaluate_point(factory, base, options, options.values[i], t_context);
    }
  };
  const int threads = std::max(1, std::min<int>(options.threads, int(out.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return out;
}

PeakResult find_peak(const MediumFactory& factory, const EngineParams& params,
                     const PeakOptions& options) {
  const double estimate = peak_temperature_estimate(params.n_particles, params.coupling);
  PeakResult out;
  const double t_context = options.spectrum_temperature_factor * estimate;
  const auto ratio_at = [&](double t) {
    EngineParams p = params;
    p.temperature = t;
    const auto medium = factory.make(p, t_context);
    const CyclePlan plan = optimize_removals(*medium, options.insertion, options.removal);
    ++out.evaluations;
    return work_total(*medium, plan).ratio;
  };

  // walk geometrically from the estimate until the ratio turns down on both sides
  double lo = 0.0, hi = 0.0;
  {
    double a = estimate / 2.0, b = estimate, c = 2.0 * estimate;
    double fa = ratio_at(a), fb = ratio_at(b), fc = ratio_at(c);
    for (int step = 0; step < options.bracket_steps && !(fb >= fa && fb >= fc); ++step) {
      if (fc > fa) {
        a = b, fa = fb, b = c, fb = fc;
        c *= 2.0;
        fc = ratio_at(c);
      } else {
        c = b, fc = fb, b = a, fb = fa;
        a /= 2.0;
        fa = ratio_at(a);
      }
    }
    out.bracketed = fb >= fa && fb >= fc;
    lo = a;
    hi = c;
  }
  if (!out.bracketed) {
    const auto ts = axis_values(0.02 * estimate, 50.0 * estimate, options.fallback_points, true);
    std::vector<double> fs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) fs[i] = ratio_at(ts[i]);
    const auto best = std::size_t(std::max_element(fs.begin(), fs.end()) - fs.begin());
    lo = ts[best == 0 ? 0 : best - 1];
    hi = ts[std::min(best + 1, ts.size() - 1)];
  }
  const Extremum e = golden_section_maximize(ratio_at, lo, hi, options.tolerance);
  out.temperature = e.x;
  EngineParams p = params;
  p.temperature = e.x;
  const auto medium = factory.make(p, t_context);
  out.plan = optimize_removals(*medium, options.insertion, options.removal);
  out.work = work_total(*medium, out.plan);
  out.ratio = out.work.ratio;
  out.convergence = medium->convergence();
  return out;
}

}  // namespace szilard
