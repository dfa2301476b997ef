#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "szilard/spectrum.hpp"
#include "szilard/thermo.hpp"
#include "szilard/units.hpp"

namespace szilard {

struct CyclePlan {
  double insertion = 0.5;
  /// removals[n] is where the wall is lifted after measuring n on the left.
  std::vector<double> removals;
};

/// Works in units of k_BT.
struct WorkBreakdown {
  double w_insert = 0.0;
  double w_measure = 0.0;
  double w_expand = 0.0;
  double w_remove = 0.0;
  double w_total = 0.0;
  /// -sum p_n ln[p_n(ins) / p_n(rem_n)].
  double closed_form = 0.0;
  double info = 0.0;
  /// W / (k_BT ln 2).
  double ratio = 0.0;
  std::vector<double> probabilities;
};

double work_insertion(const Medium& medium, double insertion);
double work_expansion(const Medium& medium, const CyclePlan& plan);
double work_removal(const Medium& medium, const CyclePlan& plan);
WorkBreakdown work_total(const Medium& medium, const CyclePlan& plan);

struct RemovalOptions {
  int grid_points = 101;
  double tolerance = 1e-5;
  /// Fill removals[N - n] as 1 - removals[n].
  bool mirror = true;
};

/// argmax_l p_n(l) for every n. These do not depend on the insertion point.
std::vector<double> optimal_removals(const Medium& medium, const RemovalOptions& options = {});
CyclePlan optimize_removals(const Medium& medium, double insertion,
                            const RemovalOptions& options = {});

struct InsertionOptions {
  /// Grid of 2 * half_points + 1 points centred on 1/2.
  int half_points = 49;
  double lo = 0.01;
  double hi = 0.99;
  double tolerance = 1e-5;
  /// |l* - 1/2| above this counts as a broken symmetry.
  double bifurcation_threshold = 1e-3;
  RemovalOptions removal;
};

struct InsertionResult {
  double insertion = 0.5;
  CyclePlan plan;
  WorkBreakdown work;
  /// Refined local maxima as (insertion, ratio), ascending in insertion.
  std::vector<std::pair<double, double>> local_maxima;
  bool bifurcated = false;
};

InsertionResult optimize_insertion(const Medium& medium, const InsertionOptions& options = {});

enum class Baseline { kExact, kIdealBose, kIdealFermi, kPerturbative, kClassical };

std::string baseline_name(Baseline b);
std::optional<Baseline> parse_baseline(const std::string& name);

/// Builds the medium for a parameter point. The exact baseline shares one
/// spectrum solver across all media it creates.
class MediumFactory {
 public:
  explicit MediumFactory(Baseline baseline, std::shared_ptr<SpectrumSolver> solver = nullptr);
  /// `spectrum_temperature` is the largest temperature of the surrounding
  /// sweep; only the exact baseline uses it.
  std::unique_ptr<Medium> make(const EngineParams& params,
                               double spectrum_temperature = 0.0) const;
  Baseline baseline() const { return baseline_; }
  const std::shared_ptr<SpectrumSolver>& solver() const { return solver_; }

 private:
  Baseline baseline_;
  std::shared_ptr<SpectrumSolver> solver_;
};

enum class ScanAxis { kTemperature, kCoupling, kInsertion };

std::string axis_name(ScanAxis axis);
std::optional<ScanAxis> parse_axis(const std::string& name);

/// `count` points from lo to hi inclusive, linear or geometric.
std::vector<double> axis_values(double lo, double hi, int count, bool geometric = false);

struct ScanOptions {
  ScanAxis axis = ScanAxis::kTemperature;
  std::vector<double> values;
  /// Used unless the axis is insertion or optimize_insertion is set.
  double insertion = 0.5;
  bool optimize_insertion = false;
  InsertionOptions insertion_options;
  /// Temperature sweeps request spectra for their largest temperature so
  /// all points share one basis.
  bool shared_spectrum_temperature = true;
  int threads = 1;
};

struct ScanPoint {
  double axis_value = 0.0;
  EngineParams params;
  bool ok = false;
  std::string error;
  CyclePlan plan;
  WorkBreakdown work;
  ConvergenceReport convergence;
};

/// Evaluates every point; per-point failures are recorded, never thrown.
/// The result order follows options.values regardless of threading.
std::vector<ScanPoint> scan(const MediumFactory& factory, const EngineParams& base,
                            const ScanOptions& options);

struct PeakOptions {
  /// Absolute tolerance on k_BT.
  double tolerance = 1e-3 * kE1;
  double insertion = 0.5;
  RemovalOptions removal;
  /// Spectra are requested for this multiple of the estimate (or the
  /// evaluated temperature, if higher) so the search shares one basis.
  double spectrum_temperature_factor = 8.0;
  /// Doublings or halvings tried while bracketing before the fallback scan.
  int bracket_steps = 6;
  int fallback_points = 41;
};

struct PeakResult {
  double temperature = 0.0;
  double ratio = 0.0;
  WorkBreakdown work;
  CyclePlan plan;
  ConvergenceReport convergence;
  bool bracketed = true;
  int evaluations = 0;
};

/// Temperature maximizing W/W1 at fixed insertion, starting from the
/// bracket around peak_temperature_estimate. Needs g < 0.
PeakResult find_peak(const MediumFactory& factory, const EngineParams& params,
                     const PeakOptions& options = {});

}  // namespace szilard
