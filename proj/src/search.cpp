#include "szilard/search.hpp"

#include <algorithm>
#include <cmath>

#include "szilard/errors.hpp"

namespace szilard {

Extremum golden_section_maximize(const std::function<double(double)>& f, double a, double b,
                                 double tol) {
  if (!(b > a)) throw InvalidParameter("empty search interval");
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  int evals = 2;
  while (b - a > tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    }
    ++evals;
  }
  return f1 >= f2 ? Extremum{x1, f1, evals} : Extremum{x2, f2, evals};
}

Extremum grid_then_golden_maximize(const std::function<double(double)>& f, double a, double b,
                                   int points, double tol) {
  if (points < 3) throw InvalidParameter("grid needs at least 3 points");
  std::vector<double> xs(points), fs(points);
  for (int i = 0; i < points; ++i) {
    xs[i] = i + 1 == points ? b : a + (b - a) * i / (points - 1);
    fs[i] = f(xs[i]);
  }
  const auto best = std::size_t(std::max_element(fs.begin(), fs.end()) - fs.begin());
  Extremum out{xs[best], fs[best], points};
  const double lo = xs[best == 0 ? 0 : best - 1];
  const double hi = xs[std::min<std::size_t>(best + 1, points - 1)];
  const Extremum refined = golden_section_maximize(f, lo, hi, tol);
  out.evaluations += refined.evaluations;
  if (refined.value > out.value) {
    out.x = refined.x;
    out.value = refined.value;
  }
  return out;
}

std::vector<std::size_t> local_maxima(const std::vector<double>& v) {
  std::vector<std::size_t> out;
  const std::size_t n = v.size();
  std::size_t s = 0;
  while (s < n) {
    std::size_t e = s;
    while (e + 1 < n && v[e + 1] == v[s]) ++e;
    const bool left = s == 0 || v[s - 1] < v[s];
    const bool right = e + 1 == n || v[e + 1] < v[e];
    // a plateau is reported by its middle point
    if (left && right) out.push_back((s + e) / 2);
    s = e + 1;
  }
  return out;
}

}  // namespace szilard
