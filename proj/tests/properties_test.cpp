// Monte Carlo properties of the estimators. Slow: minutes on one core.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rwhittle/experiments.hpp"

using namespace rwhittle;

namespace {

McReport run(ProcessKind p, std::vector<double> hs, std::vector<std::size_t> ns,
             std::size_t reps, std::uint64_t seed) {
  McConfig c;
  c.process = p;
  c.H_list = std::move(hs);
  c.N_list = std::move(ns);
  c.replications = reps;
  c.master_seed = seed;
  return run_monte_carlo(c);
}

double median_abs_error(const McCell& cell) {
  std::vector<double> e;
  for (double v : cell.estimates) e.push_back(std::abs(v - cell.key.H));
  std::nth_element(e.begin(), e.begin() + e.size() / 2, e.end());
  return e[e.size() / 2];
}

}  // namespace

TEST(Consistency, MedianErrorShrinksWithN) {
  for (auto p : {ProcessKind::fgn, ProcessKind::rosenblatt}) {
    const auto rep = run(p, {0.7}, {500, 2000, 8000}, 200, 31);
    double previous = INFINITY;
    for (std::size_t N : {500u, 2000u, 8000u}) {
      const double m = median_abs_error(*rep.find(p, 0.7, N, EstimatorKind::whittle));
      EXPECT_LT(m, previous) << to_string(p) << " N=" << N;
      previous = m;
    }
  }
}

TEST(Dispersion, RosenblattExceedsGaussian) {
  const auto ros = run(ProcessKind::rosenblatt, {0.75}, {5000}, 100, 32);
  const auto fgn = run(ProcessKind::fgn, {0.75}, {5000}, 100, 32);
  const double sr = ros.cells[0].stats.std;
  const double sf = fgn.cells[0].stats.std;
  EXPECT_GE(sr, 2.0 * sf) << "rosenblatt " << sr << " fgn " << sf;
  EXPECT_EQ(ros.cells[0].boundary_hits + fgn.cells[0].boundary_hits, 0u);
}

// Sampling density of H_hat at (H 0.65, N 5000, 1000 reps): one mode near
// 0.655 and a longer right tail.
TEST(Density, UnimodalRightSkewed) {
  const auto rep = run(ProcessKind::rosenblatt, {0.65}, {5000}, 1000, 20130502);
  const auto& cell = rep.cells[0];
  const auto kde = kde_silverman(cell.estimates);
  const auto peak = std::max_element(kde.density.begin(), kde.density.end());
  const double mode = kde.grid[static_cast<std::size_t>(peak - kde.density.begin())];
  EXPECT_NEAR(mode, 0.655, 0.015);
  // Local maxima above 5% of the peak height.
  std::size_t maxima = 0;
  for (std::size_t i = 1; i + 1 < kde.density.size(); ++i) {
    if (kde.density[i] > kde.density[i - 1] && kde.density[i] >= kde.density[i + 1] &&
        kde.density[i] > 0.05 * *peak) {
      ++maxima;
    }
  }
  EXPECT_EQ(maxima, 1u);
  EXPECT_GT(cell.stats.skewness, 0.0);
}
