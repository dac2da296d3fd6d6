#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "rwhittle/error.hpp"
#include "rwhittle/fft.hpp"
#include "rwhittle/simulate.hpp"
#include "rwhittle/spectral.hpp"

namespace rwhittle {

/// r_hat(k) = (1/N) sum_{j=1}^{N-|k|} Y_j Y_{j+|k|}; no mean correction.
inline double sample_autocov(std::span<const double> y, long k) {
  const std::size_t n = y.size();
  const std::size_t lag = static_cast<std::size_t>(k < 0 ? -k : k);
  require(lag < n, ErrorKind::range,
          "lag " + std::to_string(k) + " out of range for N = " + std::to_string(n));
  double acc = 0.0;
  for (std::size_t j = 0; j + lag < n; ++j) acc += y[j] * y[j + lag];
  return acc / static_cast<double>(n);
}

inline double sample_autocov(const TimeSeries& series, long k) {
  return sample_autocov(series.values, k);
}

/// Periodogram ordinates on lambda_k = pi k / N, k = 1..N (index k - 1).
struct PeriodogramGrid {
  std::size_t n = 0;
  std::vector<double> frequencies;
  std::vector<double> ordinates;
  bool mean_corrected = false;

  double frequency(std::size_t k) const { return frequencies.at(k - 1); }
  double ordinate(std::size_t k) const { return ordinates.at(k - 1); }

  /// Periodogram at the Fourier frequency 2 pi j / N, 1 <= j <= N/2.
  double fourier_ordinate(std::size_t j) const { return ordinates.at(2 * j - 1); }
};

/// (1/(2 pi N)) |sum_j (Y_j - mean) e^{-i j pi k/N}|^2 for k = 1..N, from one
/// transform of the series zero-padded to 2N (bin k sits exactly at pi k/N).
inline PeriodogramGrid periodogram_grid(std::span<const double> y, bool mean_correct) {
  const std::size_t n = y.size();
  require(n >= 2, ErrorKind::range, "periodogram needs N >= 2");
  std::vector<double> centered(y.begin(), y.end());
  if (mean_correct) {
    const double mean = std::accumulate(centered.begin(), centered.end(), 0.0) /
                        static_cast<double>(n);
    for (double& v : centered) v -= mean;
  }
  const auto bins = fft::forward_real(centered, 2 * n);

  PeriodogramGrid grid;
  grid.n = n;
  grid.mean_corrected = mean_correct;
  grid.frequencies.resize(n);
  grid.ordinates.resize(n);
  const double norm = 1.0 / (kTwoPi * static_cast<double>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    grid.frequencies[k - 1] = kPi * static_cast<double>(k) / static_cast<double>(n);
    grid.ordinates[k - 1] = std::norm(bins[k]) * norm;
  }
  return grid;
}

inline PeriodogramGrid periodogram_grid(const TimeSeries& series, bool mean_correct) {
  return periodogram_grid(std::span<const double>(series.values), mean_correct);
}

/// J_hat(g) = (2 pi / N) sum_{k=1}^{N} g(pi k/N) I(pi k/N).
template <class Weight>
double integrated_periodogram(const PeriodogramGrid& grid, Weight&& g) {
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double w = g(grid.frequencies[k]);
    require(std::isfinite(w), ErrorKind::domain,
            "weight is not finite at a grid frequency");
    acc += w * grid.ordinates[k];
  }
  return kTwoPi / static_cast<double>(grid.n) * acc;
}

}  // namespace rwhittle
