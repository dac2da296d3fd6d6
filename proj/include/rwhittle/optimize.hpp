#pragma once

// Derivative-free scalar minimization: a coarse grid locates the basin, golden
// section refines inside the bracket around the best grid point.

#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "rwhittle/error.hpp"

namespace rwhittle {

struct ScalarSearchResult {
  double argmin = 0.0;
  double min_value = 0.0;
  std::size_t n_evals = 0;
  double bracket_lo = 0.0;  // final golden-section interval
  double bracket_hi = 0.0;
  std::vector<std::pair<double, double>> grid_profile;
};

/// lo, lo + step, lo + 2 step, ... (strictly below hi), then hi.
inline std::vector<double> search_grid(double lo, double hi, double step) {
  require(hi > lo && step > 0.0, ErrorKind::domain, "invalid search grid");
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    if (x >= hi - 1e-9 * step) break;
    grid.push_back(x);
  }
  grid.push_back(hi);
  return grid;
}

/// Minimizes f over [lo, hi]. Ties on the grid go to the lowest abscissa. The
/// reported minimum is the best point ever evaluated, so it never exceeds the
/// grid minimum. f is evaluated at most once per distinct abscissa.
template <class F>
ScalarSearchResult grid_golden_minimize(F&& f, double lo, double hi, double step,
                                        double tol) {
  require(tol > 0.0, ErrorKind::domain, "tolerance must be positive");
  std::map<double, double> seen;
  auto eval = [&](double x) {
    auto it = seen.find(x);
    if (it != seen.end()) return it->second;
    const double v = f(x);
    seen.emplace(x, v);
    return v;
  };

  ScalarSearchResult out;
  const auto grid = search_grid(lo, hi, step);
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = eval(grid[i]);
    out.grid_profile.emplace_back(grid[i], v);
    if (v < out.grid_profile[best].second) best = i;
  }

  double a = grid[best > 0 ? best - 1 : 0];
  double b = grid[best + 1 < grid.size() ? best + 1 : best];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  out.bracket_lo = a;
  out.bracket_hi = b;

  out.argmin = seen.begin()->first;
  out.min_value = seen.begin()->second;
  for (const auto& [x, v] : seen) {
    if (v < out.min_value) {
      out.argmin = x;
      out.min_value = v;
    }
  }
  out.n_evals = seen.size();
  return out;
}

}  // namespace rwhittle
