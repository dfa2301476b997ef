#pragma once

#include <functional>
#include <vector>

namespace szilard {

struct Extremum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Maximum of a unimodal f on [a, b] to |dx| < tol.
Extremum golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                                 double tol);

/// Uniform grid of `points` samples on [a, b] (endpoints included), then
/// golden-section refinement of the best sample between its neighbours.
/// Ties go to the earliest grid point.
Extremum grid_then_golden_maximize(const std::function<double(double)>& f, double a, double b,
                                   int points, double tol);

/// Indices of strict-or-plateau local maxima of a sampled curve, endpoints
/// included when they dominate their single neighbour.
std::vector<std::size_t> local_maxima(const std::vector<double>& values);

}  // namespace szilard
