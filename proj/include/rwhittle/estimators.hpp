#pragma once

// Whittle estimation of (H, C) from increments, and the local-Whittle
// comparison estimator.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rwhittle/error.hpp"
#include "rwhittle/optimize.hpp"
#include "rwhittle/params.hpp"
#include "rwhittle/periodogram.hpp"
#include "rwhittle/simulate.hpp"
#include "rwhittle/spectral.hpp"

namespace rwhittle {

enum class EstimatorKind { whittle, lw };

inline const char* to_string(EstimatorKind kind) {
  return kind == EstimatorKind::whittle ? "whittle" : "lw";
}

inline EstimatorKind parse_estimator_kind(std::string_view name) {
  if (name == "whittle") return EstimatorKind::whittle;
  if (name == "lw") return EstimatorKind::lw;
  fail(ErrorKind::parse, "unknown estimator '" + std::string(name) + "'");
}

struct WhittleOptions {
  double grid_step = 0.01;
  double eps = kHurstMargin;  // search over [1/2 + eps, 1 - eps]
  double tolerance = 1e-5;    // final golden-section bracket width
  SpectralConfig spectral;

  void validate() const {
    require(grid_step > 0.0 && grid_step < 0.25, ErrorKind::domain,
            "grid step must lie in (0, 0.25)");
    require(eps > 0.0 && eps < 0.1, ErrorKind::domain, "eps must lie in (0, 0.1)");
    require(tolerance > 0.0 && tolerance < grid_step, ErrorKind::domain,
            "tolerance must lie in (0, grid_step)");
    spectral.validate();
  }
};

struct WhittleFit {
  double H_hat = 0.0;
  double sigma2_hat = 0.0;        // (1/N) sum I/g_H at H_hat
  double sigma2_integral = 0.0;   // (1/2pi) J_hat(1/g_H) with the same Riemann sum
  double C_hat = 0.0;
  double objective_at_opt = 0.0;
  std::size_t n_evals = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<std::pair<double, double>> grid_profile;
  std::vector<std::string> warnings;
  bool boundary_hit = false;
};

/// (2 pi / N) sum_k I(pi k/N) / g_H(pi k/N), evaluated directly.
inline double whittle_objective(const PeriodogramGrid& grid, double H,
                                const SpectralConfig& config = {}) {
  detail::check_hurst(H);
  config.validate();
  const double a = detail::unchecked_log_normalizer(H, config);
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.n; ++k) {
    acc += grid.ordinates[k] /
           (a * detail::shape(grid.frequencies[k], H, config.truncation_order));
  }
  return kTwoPi / static_cast<double>(grid.n) * acc;
}

/// Precomputation tied to a sample size: log|lambda_k + 2 j pi| on the
/// frequency grid and 1/g_H vectors for the coarse search grid. Shared
/// read-only between fits of the same N; values do not depend on the order in
/// which fits request them.
class WhittleWorkspace {
 public:
  struct Weights {
    double a = 0.0;                 // a_H
    std::vector<double> inverse;    // 1 / g_H(pi k/N), k = 1..N
  };

  WhittleWorkspace(std::size_t n, WhittleOptions options = {})
      : n_(n), options_(options) {
    options_.validate();
    require(n >= 2, ErrorKind::range, "workspace needs N >= 2");
    const int K = options_.spectral.truncation_order;
    stride_ = static_cast<std::size_t>(2 * K + 1);
    logs_.resize(n_ * stride_);
    sin2_.resize(n_);
    lambda_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      const double l = kPi * static_cast<double>(k + 1) / static_cast<double>(n_);
      lambda_[k] = l;
      const double half = std::sin(0.5 * l);
      sin2_[k] = 2.0 * half * half;
      double* row = &logs_[k * stride_];
      // Same term order as detail::lattice_sum: j = K..1 pairs, then j = 0.
      std::size_t idx = 0;
      for (int j = K; j >= 1; --j) {
        row[idx++] = std::log(kTwoPi * j + l);
        row[idx++] = std::log(kTwoPi * j - l);
      }
      row[idx] = std::log(l);
    }
    grid_ = search_grid(lower(), upper(), options_.grid_step);
    cache_.resize(grid_.size());
  }

  std::size_t n() const noexcept { return n_; }
  const WhittleOptions& options() const noexcept { return options_; }
  double lower() const noexcept { return 0.5 + options_.eps; }
  double upper() const noexcept { return 1.0 - options_.eps; }
  const std::vector<double>& coarse_grid() const noexcept { return grid_; }

  Weights compute(double H) const {
    const int K = options_.spectral.truncation_order;
    const double s = 1.0 + 2.0 * H;
    Weights w;
    w.a = detail::unchecked_log_normalizer(H, options_.spectral);
    w.inverse.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      const double* row = &logs_[k * stride_];
      double sum = detail::lattice_tail(lambda_[k], s, K);
      for (std::size_t i = 0; i < stride_; ++i) sum += std::exp(-s * row[i]);
      w.inverse[k] = 1.0 / (w.a * sin2_[k] * sum);
    }
    return w;
  }

  /// Coarse-grid H values come from the shared cache, other H are computed.
  std::shared_ptr<const Weights> weights(double H) const {
    auto it = std::lower_bound(grid_.begin(), grid_.end(), H);
    if (it == grid_.end() || *it != H) {
      return std::make_shared<const Weights>(compute(H));
    }
    const auto slot = static_cast<std::size_t>(it - grid_.begin());
    {
      std::lock_guard lock(mutex_);
      if (cache_[slot]) return cache_[slot];
    }
    auto fresh = std::make_shared<const Weights>(compute(H));
    std::lock_guard lock(mutex_);
    if (!cache_[slot]) cache_[slot] = fresh;
    return cache_[slot];
  }

 private:
  std::size_t n_;
  WhittleOptions options_;
  std::size_t stride_ = 0;
  std::vector<double> logs_;
  std::vector<double> sin2_;
  std::vector<double> lambda_;
  std::vector<double> grid_;
  mutable std::mutex mutex_;
  mutable std::vector<std::shared_ptr<const Weights>> cache_;
};

inline constexpr std::size_t kMinWhittleLength = 32;

/// H_hat = argmin over [1/2 + eps, 1 - eps] of the Riemann-sum contrast;
/// sigma2_hat = (1/N) sum I/g_{H_hat}; C_hat = (mu(H_hat) sigma2_hat)^{1/2}.
inline WhittleFit estimate_whittle(const PeriodogramGrid& grid,
                                   const WhittleWorkspace& workspace) {
  require(grid.n == workspace.n(), ErrorKind::range,
          "workspace was built for a different sample size");
  require(grid.n >= kMinWhittleLength, ErrorKind::range,
          "Whittle estimation needs N >= 32");
  require(grid.mean_corrected, ErrorKind::domain,
          "Whittle estimation expects a mean-corrected periodogram");
  const bool degenerate = std::all_of(grid.ordinates.begin(), grid.ordinates.end(),
                                      [](double v) { return v == 0.0; });
  require(!degenerate, ErrorKind::degenerate,
          "series is constant: the Whittle contrast vanishes identically");

  const double scale = kTwoPi / static_cast<double>(grid.n);
  auto objective = [&](double H) {
    const auto w = workspace.weights(H);
    double acc = 0.0;
    for (std::size_t k = 0; k < grid.n; ++k) acc += grid.ordinates[k] * w->inverse[k];
    return scale * acc;
  };

  const auto& options = workspace.options();
  const auto search = grid_golden_minimize(objective, workspace.lower(), workspace.upper(),
                                           options.grid_step, options.tolerance);
  WhittleFit fit;
  fit.H_hat = search.argmin;
  fit.objective_at_opt = search.min_value;
  fit.n_evals = search.n_evals;
  fit.bracket_lo = search.bracket_lo;
  fit.bracket_hi = search.bracket_hi;
  fit.grid_profile = search.grid_profile;
  fit.sigma2_hat = fit.objective_at_opt / kTwoPi;
  fit.sigma2_integral = fit.objective_at_opt / kTwoPi;
  fit.C_hat = scale_from_sigma2(fit.H_hat, fit.sigma2_hat, options.spectral);
  const double margin = 2.0 * options.eps;
  if (fit.H_hat <= workspace.lower() + margin || fit.H_hat >= workspace.upper() - margin) {
    fit.boundary_hit = true;
    fit.warnings.push_back("H_hat within 2*eps of the search interval boundary");
  }
  return fit;
}

inline WhittleFit estimate_whittle(const TimeSeries& series,
                                   const WhittleOptions& options = {}) {
  series.validate();
  require(series.size() >= kMinWhittleLength, ErrorKind::range,
          "Whittle estimation needs N >= 32");
  const WhittleWorkspace workspace(series.size(), options);
  return estimate_whittle(periodogram_grid(series, true), workspace);
}

// ------------------------------------------------------------ local Whittle

struct LocalWhittleOptions {
  std::optional<std::size_t> m;  // default floor(N^0.65)
  double grid_step = 0.01;
  double eps = kHurstMargin;
  double tolerance = 1e-5;
};

struct LocalWhittleFit {
  double H_hat = 0.0;
  double d_hat = 0.0;
  double objective_at_opt = 0.0;
  std::size_t m = 0;
  std::size_t n_evals = 0;
};

inline std::size_t default_lw_bandwidth(std::size_t n) {
  return static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 0.65)));
}

inline constexpr std::size_t kMinLocalWhittleLength = 64;

/// H_LW = 1/2 + argmin_d R(d), R(d) = log((1/m) sum_j lambda_j^{2d} I_j)
/// - (2d/m) sum_j log lambda_j over the m lowest Fourier frequencies.
inline LocalWhittleFit estimate_local_whittle(const PeriodogramGrid& grid,
                                              const LocalWhittleOptions& options = {}) {
  const std::size_t n = grid.n;
  require(n >= kMinLocalWhittleLength, ErrorKind::range,
          "local Whittle estimation needs N >= 64");
  const std::size_t m = options.m.value_or(default_lw_bandwidth(n));
  require(m >= 4 && 2 * m < n, ErrorKind::range,
          "local Whittle bandwidth m must satisfy 4 <= m < N/2, got " + std::to_string(m));

  std::vector<double> log_lambda(m), ordinate(m);
  double mean_log = 0.0;
  for (std::size_t j = 1; j <= m; ++j) {
    log_lambda[j - 1] = std::log(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    ordinate[j - 1] = grid.fourier_ordinate(j);
    mean_log += log_lambda[j - 1];
  }
  mean_log /= static_cast<double>(m);
  require(std::any_of(ordinate.begin(), ordinate.end(), [](double v) { return v > 0.0; }),
          ErrorKind::degenerate, "periodogram vanishes at the low Fourier frequencies");

  auto profile = [&](double d) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) acc += std::exp(2.0 * d * log_lambda[j]) * ordinate[j];
    return std::log(acc / static_cast<double>(m)) - 2.0 * d * mean_log;
  };
  const auto search = grid_golden_minimize(profile, options.eps, 0.5 - options.eps,
                                           options.grid_step, options.tolerance);
  LocalWhittleFit fit;
  fit.d_hat = search.argmin;
  fit.H_hat = 0.5 + search.argmin;
  fit.objective_at_opt = search.min_value;
  fit.m = m;
  fit.n_evals = search.n_evals;
  return fit;
}

inline LocalWhittleFit estimate_local_whittle(const TimeSeries& series,
                                              const LocalWhittleOptions& options = {}) {
  series.validate();
  require(series.size() >= kMinLocalWhittleLength, ErrorKind::range,
          "local Whittle estimation needs N >= 64");
  return estimate_local_whittle(periodogram_grid(series, true), options);
}

}  // namespace rwhittle
