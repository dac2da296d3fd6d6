#pragma once

// Second-order model of the increments Y_t = Z_{t+1} - Z_t of an
// H-self-similar process with stationary increments (fBm or Rosenblatt):
// covariogram, spectral density, the log-normalized shape g_H and the
// constants of the non-central limit theorems.

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "rwhittle/error.hpp"
#include "rwhittle/params.hpp"

namespace rwhittle {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// (C^2/2)(|t+1|^{2H} + |t-1|^{2H} - 2|t|^{2H}); valid for any H in (0, 1].
inline double covariogram(double H, double C, double t) {
  const double a = std::abs(t);
  const double e = 2.0 * H;
  return 0.5 * C * C *
         (std::pow(a + 1.0, e) + std::pow(std::abs(a - 1.0), e) -
          2.0 * std::pow(a, e));
}

inline double autocovariance(const LongMemoryParams& params, long lag) {
  if (lag == 0) return params.scale() * params.scale();
  return covariogram(params.hurst(), params.scale(), static_cast<double>(lag));
}

/// kappa(H) in f_{H,C}(l) = kappa(H) C^2 (1 - cos l) sum_k |l + 2k pi|^{-1-2H}.
/// Fixed by int_{-pi}^{pi} f_{H,C} = r_{H,C}(0) = C^2.
inline double density_constant(double H) {
  return std::sin(kPi * H) * std::tgamma(2.0 * H + 1.0) / kPi;
}

namespace detail {

inline void check_frequency(double lambda) {
  require(lambda != 0.0, ErrorKind::domain,
          "spectral density diverges at frequency 0");
  require(std::abs(lambda) <= kPi * (1.0 + 1e-12), ErrorKind::domain,
          "frequency must lie in [-pi, pi]");
}

/// sum_{|k|>K} |l + 2k pi|^{-s}: midpoint Euler-Maclaurin closure, the
/// integral from K + 1/2 plus h'(K + 1/2)/24, for both signs of k.
inline double lattice_tail(double abs_lambda, double s, int K) {
  const double x = kTwoPi * (K + 0.5);
  const double up = x + abs_lambda;
  const double down = x - abs_lambda;
  const double integral =
      (std::pow(up, 1.0 - s) + std::pow(down, 1.0 - s)) / (kTwoPi * (s - 1.0));
  const double slope = s * kTwoPi / 24.0 * (std::pow(up, -s - 1.0) + std::pow(down, -s - 1.0));
  return integral - slope;
}

/// sum_{k != 0} |l + 2k pi|^{-s}, explicit for |k| <= K plus the tail.
inline double lattice_sum_nonzero(double abs_lambda, double s, int K) {
  double sum = lattice_tail(abs_lambda, s, K);
  for (int k = K; k >= 1; --k) {
    const double base = kTwoPi * k;
    sum += std::pow(base + abs_lambda, -s) + std::pow(base - abs_lambda, -s);
  }
  return sum;
}

/// sum_{k in Z} |l + 2k pi|^{-s}.
inline double lattice_sum(double lambda, double s, int K) {
  const double a = std::abs(lambda);
  return lattice_sum_nonzero(a, s, K) + std::pow(a, -s);
}

/// (1 - cos l) sum_k |l + 2k pi|^{-1-2H}; 1 - cos l is formed as 2 sin^2(l/2).
/// The k = 0 term is combined as (sin(l/2)/(l/2))^2 |l|^{1-2H}/2 so that tiny
/// frequencies neither overflow nor underflow.
inline double shape(double lambda, double H, int K) {
  const double a = std::abs(lambda);
  const double s = 1.0 + 2.0 * H;
  const double half = std::sin(0.5 * a);
  const double sinc = half / (0.5 * a);
  return 2.0 * half * half * lattice_sum_nonzero(a, s, K) +
         0.5 * sinc * sinc * std::pow(a, 2.0 - s);
}

/// int_0^pi f(t) dt on geometric panels [pi 2^{-j-1}, pi 2^{-j}], j < panels.
/// The integrand may carry an integrable singularity at 0; the piece below
/// pi 2^{-panels} is left to the caller.
template <class F>
double integrate_from_origin(F&& f, int panels) {
  using Rule = boost::math::quadrature::gauss<double, 10>;
  double total = 0.0;
  double hi = kPi;
  for (int j = 0; j < panels; ++j) {
    const double lo = 0.5 * hi;
    total += Rule::integrate(f, lo, hi);
    hi = lo;
  }
  return total;
}

/// (1/2pi) int_{-pi}^{pi} log shape_H(t) dt. With s = 1 + 2H,
///   log shape = log(2 sin^2(t/2)) - s log t + log1p(t^s R(t)),
/// R the k != 0 part of the lattice sum. The first two terms integrate in
/// closed form over [0, pi] (-pi log 2 and -s pi (log pi - 1)); the last one
/// vanishes like t^s at the origin and goes to the geometric panels.
inline double mean_log_shape(double H, const SpectralConfig& config) {
  const int K = config.truncation_order;
  const double s = 1.0 + 2.0 * H;
  using Rule = boost::math::quadrature::gauss<double, 10>;
  auto smooth = [&](double t) {
    return std::log1p(std::pow(t, s) * lattice_sum_nonzero(t, s, K));
  };
  double remainder = 0.0;
  double hi = kPi;
  for (int j = 0; j < config.quadrature_panels; ++j) {
    const double lo = 0.5 * hi;
    const double piece = Rule::integrate(smooth, lo, hi);
    remainder += piece;
    hi = lo;
    // The rest is below hi^{s+1} R(0), negligible once pieces are this small.
    if (std::abs(piece) < 1e-18) break;
  }
  const double closed = -kPi * std::log(2.0) - s * kPi * (std::log(kPi) - 1.0);
  return (closed + remainder) / kPi;
}

/// a_H without the domain check; test code evaluates it at H = 1/2.
inline double unchecked_log_normalizer(double H, const SpectralConfig& config) {
  return std::exp(-mean_log_shape(H, config));
}

inline double unchecked_normalized_density(double H, double lambda,
                                           const SpectralConfig& config) {
  return unchecked_log_normalizer(H, config) *
         shape(lambda, H, config.truncation_order);
}

inline void check_hurst(double H) {
  require(H > 0.5 && H < 1.0, ErrorKind::domain,
          "H must lie in (1/2, 1), got " + std::to_string(H));
}

}  // namespace detail

/// a_H = exp[-(1/2pi) int log((1 - cos t) sum_k |t + 2k pi|^{-1-2H}) dt], so
/// that int_{-pi}^{pi} log g_H = 0.
inline double log_normalizer(double H, const SpectralConfig& config = {}) {
  detail::check_hurst(H);
  config.validate();
  return detail::unchecked_log_normalizer(H, config);
}

/// g_H(l) = a_H (1 - cos l) sum_k |l + 2k pi|^{-1-2H}. Independent of C.
inline double normalized_density(double H, double lambda,
                                 const SpectralConfig& config = {}) {
  detail::check_hurst(H);
  detail::check_frequency(lambda);
  config.validate();
  return detail::unchecked_normalized_density(H, lambda, config);
}

/// mu(H) with C^2 = mu(H) sigma^2, i.e. a_H / kappa(H).
inline double scale_multiplier(double H, const SpectralConfig& config = {}) {
  return log_normalizer(H, config) / density_constant(H);
}

/// C = (mu(H) sigma^2)^{1/2}.
inline double scale_from_sigma2(double H, double sigma2,
                                const SpectralConfig& config = {}) {
  require(sigma2 > 0.0, ErrorKind::domain, "sigma^2 must be positive");
  return std::sqrt(scale_multiplier(H, config) * sigma2);
}

/// sigma^2 = C^2 / mu(H), the inverse of scale_from_sigma2.
inline double sigma2_from_scale(double H, double C,
                                const SpectralConfig& config = {}) {
  require(C > 0.0, ErrorKind::domain, "C must be positive");
  return C * C / scale_multiplier(H, config);
}

/// c_Z(H) = (2H(2H-1))^{1/2} / B(1-H, H/2).
inline double rosenblatt_constant(double H) {
  detail::check_hurst(H);
  return std::sqrt(2.0 * H * (2.0 * H - 1.0)) /
         boost::math::beta(1.0 - H, 0.5 * H);
}

/// Exact second-order model for fixed (H, C). Immutable after construction.
class SpectralModel {
 public:
  explicit SpectralModel(LongMemoryParams params, SpectralConfig config = {})
      : params_(params), config_(config) {
    config_.validate();
    const double H = params_.hurst();
    a_ = detail::unchecked_log_normalizer(H, config_);
    const double C = params_.scale();
    sigma2_ = density_constant(H) * C * C / a_;
  }

  const LongMemoryParams& params() const noexcept { return params_; }
  const SpectralConfig& config() const noexcept { return config_; }
  double log_normalizer() const noexcept { return a_; }
  double sigma2() const noexcept { return sigma2_; }

  double autocovariance(long lag) const {
    return rwhittle::autocovariance(params_, lag);
  }

  /// f_{H,C}(l) = sigma^2 g_H(l).
  double density(double lambda) const {
    detail::check_frequency(lambda);
    const double C = params_.scale();
    return density_constant(params_.hurst()) * C * C *
           detail::shape(lambda, params_.hurst(), config_.truncation_order);
  }

  double normalized_density(double lambda) const {
    detail::check_frequency(lambda);
    return a_ * detail::shape(lambda, params_.hurst(), config_.truncation_order);
  }

 private:
  LongMemoryParams params_;
  SpectralConfig config_;
  double a_ = 0.0;
  double sigma2_ = 0.0;
};

inline double spectral_density(const SpectralModel& model, double lambda) {
  return model.density(lambda);
}

/// Constants of the non-central limit theorems for (H_hat, C_hat). The
/// (1+H)^2 / (1-H)^2 variants differ only in the square-root prefactor.
struct LimitConstants {
  double gamma_one_plus_h = 0.0;   // prefactor sqrt(2(2H-1)/(H(1+H)^2))
  double gamma_one_minus_h = 0.0;  // prefactor sqrt(2(2H-1)/(H(1-H)^2))
  double rho_one_plus_h = 0.0;
  double rho_one_minus_h = 0.0;
  double beta = 0.0;
  double mu = 0.0;
  double mu_prime = 0.0;
  double cross_integral = 0.0;      // int f_{(H+1)/2,1} / g_H
  double curvature_integral = 0.0;  // int f_{H,1} d^2/dH^2 (1/g_H)
};

inline LimitConstants limit_constants(double H,
                                      const SpectralConfig& config = {}) {
  detail::check_hurst(H);
  config.validate();
  const int K = config.truncation_order;
  const int panels = config.quadrature_panels;
  const double step = config.fd_step;

  auto a_of = [&](double h) { return detail::unchecked_log_normalizer(h, config); };
  const double a_H = a_of(H);
  const double kappa_H = density_constant(H);
  const double H_mid = 0.5 * (H + 1.0);
  const double kappa_mid = density_constant(H_mid);

  LimitConstants out;
  out.cross_integral =
      2.0 * detail::integrate_from_origin(
                [&](double t) {
                  return kappa_mid * detail::shape(t, H_mid, K) /
                         (a_H * detail::shape(t, H, K));
                },
                panels);

  auto curvature = [&](double delta) {
    const double a_lo = a_of(H - delta);
    const double a_hi = a_of(H + delta);
    return 2.0 * detail::integrate_from_origin(
                     [&](double t) {
                       const double inv_lo = 1.0 / (a_lo * detail::shape(t, H - delta, K));
                       const double s_mid = detail::shape(t, H, K);
                       const double inv_mid = 1.0 / (a_H * s_mid);
                       const double inv_hi = 1.0 / (a_hi * detail::shape(t, H + delta, K));
                       return kappa_H * s_mid *
                              (inv_hi - 2.0 * inv_mid + inv_lo) / (delta * delta);
                     },
                     panels);
  };
  const double coarse = curvature(step);
  const double fine = curvature(0.5 * step);
  out.curvature_integral = (4.0 * fine - coarse) / 3.0;
  if (!(std::abs(out.curvature_integral - fine) <=
        1e-3 * std::abs(out.curvature_integral))) {
    fail(ErrorKind::instability,
         "second H-derivative of 1/g_H did not settle (Richardson disagreement)");
  }

  auto mu_of = [&](double h) { return a_of(h) / density_constant(h); };
  auto mu_slope = [&](double delta) {
    return (mu_of(H + delta) - mu_of(H - delta)) / (2.0 * delta);
  };
  const double slope_coarse = mu_slope(step);
  const double slope_fine = mu_slope(0.5 * step);
  out.mu = a_H / kappa_H;
  out.mu_prime = (4.0 * slope_fine - slope_coarse) / 3.0;
  if (!(std::abs(out.mu_prime - slope_fine) <=
        1e-3 * std::abs(out.mu_prime) + 1e-12)) {
    fail(ErrorKind::instability, "derivative of mu(H) did not settle");
  }

  const double spread = 2.0 * (2.0 * H - 1.0) / H;
  out.beta = std::sqrt(spread / ((1.0 - H) * (1.0 - H))) * out.cross_integral;
  const double ratio = out.cross_integral / out.curvature_integral;
  out.gamma_one_plus_h = 16.0 * kPi * std::sqrt(spread / ((1.0 + H) * (1.0 + H))) * ratio;
  out.gamma_one_minus_h = 16.0 * kPi * std::sqrt(spread / ((1.0 - H) * (1.0 - H))) * ratio;

  auto rho = [&](double gamma) {
    return (out.mu_prime * out.mu_prime * gamma +
            4.0 / kPi * out.beta * out.mu * out.mu) /
           (4.0 * out.mu);
  };
  out.rho_one_plus_h = rho(out.gamma_one_plus_h);
  out.rho_one_minus_h = rho(out.gamma_one_minus_h);
  return out;
}

}  // namespace rwhittle
