#pragma once

// Path generators: FARIMA(0,d,0), fractional Gaussian noise and increments of
// the Rosenblatt process obtained as normalized Hermite-rank-2 block sums of a
// FARIMA(0,H/2,0) stream. Every generator is a pure function of its
// parameters and SeedSpec.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rwhittle/error.hpp"
#include "rwhittle/fft.hpp"
#include "rwhittle/random.hpp"
#include "rwhittle/spectral.hpp"

namespace rwhittle {

enum class ProcessKind { fgn, farima, rosenblatt, external };

inline const char* to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::fgn: return "fgn";
    case ProcessKind::farima: return "farima";
    case ProcessKind::rosenblatt: return "rosenblatt";
    case ProcessKind::external: return "external";
  }
  return "external";
}

inline ProcessKind parse_process_kind(std::string_view name) {
  if (name == "fgn") return ProcessKind::fgn;
  if (name == "farima") return ProcessKind::farima;
  if (name == "rosenblatt") return ProcessKind::rosenblatt;
  if (name == "external") return ProcessKind::external;
  fail(ErrorKind::parse, "unknown process kind '" + std::string(name) + "'");
}

/// Provenance of a series. Fields that do not apply to a process stay at 0.
struct SeriesMeta {
  ProcessKind kind = ProcessKind::external;
  double H = 0.0;
  double C = 0.0;
  double d = 0.0;
  std::size_t n_inner = 0;
  std::size_t truncation = 0;
  std::string method;
  SeedSpec seed;
};

struct TimeSeries {
  std::vector<double> values;
  SeriesMeta meta;

  std::size_t size() const noexcept { return values.size(); }

  void validate() const {
    require(values.size() >= 2, ErrorKind::range, "series needs at least 2 values");
    for (double v : values) {
      require(std::isfinite(v), ErrorKind::domain, "series contains a non-finite value");
    }
  }
};

// ---------------------------------------------------------------- FARIMA ----

inline void check_memory_parameter(double d) {
  require(d > 0.0 && d < 0.5, ErrorKind::domain,
          "memory parameter d must lie in (0, 1/2), got " + std::to_string(d));
}

/// psi_0..psi_m of (1 - B)^{-d}: psi_j = psi_{j-1} (j - 1 + d) / j.
inline std::vector<double> farima_ma_coefficients(double d, std::size_t m) {
  check_memory_parameter(d);
  require(m >= 1, ErrorKind::range, "m must be >= 1");
  std::vector<double> psi(m + 1);
  psi[0] = 1.0;
  for (std::size_t j = 1; j <= m; ++j) {
    psi[j] = psi[j - 1] * (static_cast<double>(j) - 1.0 + d) / static_cast<double>(j);
  }
  return psi;
}

/// sum_j psi_j^2 = Gamma(1 - 2d) / Gamma(1 - d)^2.
inline double farima_total_variance(double d) {
  check_memory_parameter(d);
  const double g = std::tgamma(1.0 - d);
  return std::tgamma(1.0 - 2.0 * d) / (g * g);
}

/// Fraction of the MA(inf) variance lost by truncating after lag m.
inline double farima_variance_deficit(double d, std::size_t m) {
  const auto psi = farima_ma_coefficients(d, m);
  double kept = 0.0;
  for (auto it = psi.rbegin(); it != psi.rend(); ++it) kept += *it * *it;
  return 1.0 - kept / farima_total_variance(d);
}

inline constexpr double kMaxVarianceDeficit = 1e-3;
inline constexpr std::size_t kMaxTruncation = std::size_t{1} << 20;

/// Smallest m with variance deficit below kMaxVarianceDeficit (m <= 2^20).
inline std::size_t farima_default_truncation(double d) {
  check_memory_parameter(d);
  const double target = (1.0 - kMaxVarianceDeficit) * farima_total_variance(d);
  double psi = 1.0;
  double kept = 1.0;
  for (std::size_t j = 1; j <= kMaxTruncation; ++j) {
    psi *= (static_cast<double>(j) - 1.0 + d) / static_cast<double>(j);
    kept += psi * psi;
    if (kept > target) return j;
  }
  fail(ErrorKind::truncation,
       "no FARIMA truncation m <= 2^20 keeps the variance deficit below 1e-3 "
       "for d = " + std::to_string(d));
}

/// rho_d(0..max_lag) = Gamma(k+d)Gamma(1-d) / (Gamma(k-d+1)Gamma(d)).
inline std::vector<double> farima_autocorrelation(double d, std::size_t max_lag) {
  check_memory_parameter(d);
  std::vector<double> rho(max_lag + 1);
  rho[0] = 1.0;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    const double kk = static_cast<double>(k);
    rho[k] = rho[k - 1] * (kk - 1.0 + d) / (kk - d);
  }
  return rho;
}

// ------------------------------------------------------ exact Gaussian -----

/// Circulant embedding (Davies-Harte) of a stationary Gaussian sequence.
/// The covariance sequence is given up to lag M >= length - 1; the embedding
/// has size 2M.
class CirculantGaussian {
 public:
  CirculantGaussian(std::span<const double> acvs, std::size_t length)
      : length_(length) {
    require(length >= 1 && acvs.size() >= std::max<std::size_t>(length, 2),
            ErrorKind::range, "covariance sequence shorter than the series");
    const std::size_t M = acvs.size() - 1;
    const std::size_t size = 2 * M;
    std::vector<fft::Complex> row(size);
    for (std::size_t k = 0; k <= M; ++k) row[k] = acvs[k];
    for (std::size_t k = 1; k < M; ++k) row[size - k] = acvs[k];
    fft::forward_in_place(row);

    double largest = 0.0;
    double smallest = 0.0;
    for (const auto& v : row) {
      largest = std::max(largest, v.real());
      smallest = std::min(smallest, v.real());
    }
    valid_ = smallest >= -1e-10 * largest;
    min_eigenvalue_ = smallest;
    scaled_root_.resize(size);
    for (std::size_t k = 0; k < size; ++k) {
      scaled_root_[k] = std::sqrt(std::max(row[k].real(), 0.0) / static_cast<double>(size));
    }
  }

  bool valid() const noexcept { return valid_; }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t embedding_size() const noexcept { return scaled_root_.size(); }

  /// Uses draws 0 .. 2 * embedding_size() - 1 of the stream.
  std::vector<double> sample(const GaussianStream& stream) const {
    const std::size_t size = scaled_root_.size();
    std::vector<double> z(2 * size);
    stream.fill(z);
    std::vector<fft::Complex> w(size);
    for (std::size_t k = 0; k < size; ++k) {
      w[k] = scaled_root_[k] * fft::Complex(z[2 * k], z[2 * k + 1]);
    }
    z.clear();
    z.shrink_to_fit();
    fft::forward_in_place(w);
    std::vector<double> out(length_);
    for (std::size_t t = 0; t < length_; ++t) out[t] = w[t].real();
    return out;
  }

 private:
  std::size_t length_;
  bool valid_ = false;
  double min_eigenvalue_ = 0.0;
  std::vector<double> scaled_root_;
};

/// Exact Gaussian sample by the Durbin-Levinson recursion (the innovations
/// form of the Cholesky factorization of the Toeplitz covariance). O(N^2).
inline std::vector<double> simulate_gaussian_levinson(std::span<const double> acvs,
                                                      std::size_t length,
                                                      const GaussianStream& stream) {
  require(acvs.size() >= length && length >= 1, ErrorKind::range,
          "covariance sequence shorter than the series");
  std::vector<double> z(length);
  stream.fill(z);
  std::vector<double> x(length);
  std::vector<double> phi(length, 0.0);
  std::vector<double> prev(length, 0.0);
  double v = acvs[0];
  require(v > 0.0, ErrorKind::embedding, "non-positive variance");
  x[0] = std::sqrt(v) * z[0];
  for (std::size_t t = 1; t < length; ++t) {
    double acc = acvs[t];
    for (std::size_t j = 1; j < t; ++j) acc -= prev[j] * acvs[t - j];
    const double reflection = acc / v;
    phi[t] = reflection;
    for (std::size_t j = 1; j < t; ++j) phi[j] = prev[j] - reflection * prev[t - j];
    v *= 1.0 - reflection * reflection;
    require(v > 0.0, ErrorKind::embedding, "covariance is not positive definite");
    double mean = 0.0;
    for (std::size_t j = 1; j <= t; ++j) mean += phi[j] * x[t - j];
    x[t] = mean + std::sqrt(v) * z[t];
    std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(t) + 1, prev.begin());
  }
  return x;
}

namespace detail {

/// Covariance lags 0..M with M = next fast size >= length - 1.
template <class Acvs>
std::vector<double> embedding_row(std::size_t length, Acvs&& acvs) {
  const std::size_t M = fft::next_fast_size(std::max<std::size_t>(length - 1, 1));
  std::vector<double> row(M + 1);
  for (std::size_t k = 0; k <= M; ++k) row[k] = acvs(k);
  return row;
}

}  // namespace detail

// ------------------------------------------------------------ generators ---

/// X_t = s^{-1} sum_{j<=m} psi_j eps_{t-j}, s^2 = sum_{j<=m} psi_j^2. Uses
/// draws 0 .. N + m - 1 (eps_{1-m} .. eps_N).
inline TimeSeries simulate_farima(double d, std::size_t N, std::size_t m,
                                  SeedSpec seed) {
  check_memory_parameter(d);
  require(N >= 2, ErrorKind::range, "N must be >= 2");
  const double deficit = farima_variance_deficit(d, m);
  require(deficit < kMaxVarianceDeficit, ErrorKind::truncation,
          "truncation m = " + std::to_string(m) + " loses " +
              std::to_string(deficit) + " of the variance (limit 1e-3)");
  const auto psi = farima_ma_coefficients(d, m);
  double s2 = 0.0;
  for (auto it = psi.rbegin(); it != psi.rend(); ++it) s2 += *it * *it;
  const double inv_s = 1.0 / std::sqrt(s2);

  const std::size_t draws = N + m;
  std::vector<double> eps(draws);
  GaussianStream(seed).fill(eps);

  const std::size_t size = fft::next_fast_size(draws + m);
  std::vector<fft::Complex> a(size), b(size);
  for (std::size_t j = 0; j <= m; ++j) a[j] = psi[j];
  for (std::size_t i = 0; i < draws; ++i) b[i] = eps[i];
  fft::forward_in_place(a);
  fft::forward_in_place(b);
  for (std::size_t k = 0; k < size; ++k) a[k] *= b[k];
  fft::backward_in_place(a);

  TimeSeries out;
  out.values.resize(N);
  const double norm = inv_s / static_cast<double>(size);
  for (std::size_t t = 0; t < N; ++t) out.values[t] = a[t + m].real() * norm;
  out.meta.kind = ProcessKind::farima;
  out.meta.d = d;
  out.meta.truncation = m;
  out.meta.C = 1.0;
  out.meta.method = "truncated-ma";
  out.meta.seed = seed;
  return out;
}

/// Exact-law FARIMA(0,d,0) with unit variance by circulant embedding of
/// rho_d. Reusable across seeds.
class FarimaGenerator {
 public:
  FarimaGenerator(double d, std::size_t N) : d_(d), embedding_(make_embedding(d, N)) {}

  double memory() const noexcept { return d_; }
  std::size_t size() const noexcept { return embedding_.length(); }

  std::vector<double> sample(SeedSpec seed) const {
    return embedding_.sample(GaussianStream(seed));
  }

 private:
  static CirculantGaussian make_embedding(double d, std::size_t N) {
    check_memory_parameter(d);
    require(N >= 2, ErrorKind::range, "N must be >= 2");
    const auto rho = farima_autocorrelation(d, fft::next_fast_size(N - 1));
    CirculantGaussian embedding(rho, N);
    require(embedding.valid(), ErrorKind::embedding,
            "circulant embedding of the FARIMA covariance is not nonnegative");
    return embedding;
  }

  double d_;
  CirculantGaussian embedding_;
};

inline TimeSeries simulate_farima_exact(double d, std::size_t N, SeedSpec seed) {
  check_memory_parameter(d);
  FarimaGenerator gen(d, N);
  TimeSeries out;
  out.values = gen.sample(seed);
  out.meta.kind = ProcessKind::farima;
  out.meta.d = d;
  out.meta.C = 1.0;
  out.meta.method = "circulant-embedding";
  out.meta.seed = seed;
  return out;
}

inline constexpr std::size_t kMaxCholeskyLength = 4096;

/// Fractional Gaussian noise with autocovariance r_{H,1}(k).
inline TimeSeries simulate_fgn(double H, std::size_t N, SeedSpec seed) {
  require(H > 0.0 && H < 1.0, ErrorKind::domain,
          "H must lie in (0, 1) for fGn, got " + std::to_string(H));
  require(N >= 2, ErrorKind::range, "N must be >= 2");
  auto acvs = detail::embedding_row(
      N, [H](std::size_t k) { return k == 0 ? 1.0 : covariogram(H, 1.0, static_cast<double>(k)); });
  TimeSeries out;
  out.meta.kind = ProcessKind::fgn;
  out.meta.H = H;
  out.meta.C = 1.0;
  out.meta.seed = seed;
  CirculantGaussian embedding(acvs, N);
  if (embedding.valid()) {
    out.values = embedding.sample(GaussianStream(seed));
    out.meta.method = "circulant-embedding";
  } else if (N <= kMaxCholeskyLength) {
    out.values = simulate_gaussian_levinson(acvs, N, GaussianStream(seed));
    out.meta.method = "cholesky";
  } else {
    fail(ErrorKind::embedding,
         "circulant embedding failed and N exceeds the Cholesky fallback limit");
  }
  return out;
}

/// Increments of a Rosenblatt process: Y_j = C S_j / sd(S_j) with
/// S_j = sum_{i in block j} (X_i^2 - 1) over blocks of n_inner consecutive
/// values of one FARIMA(0,H/2,0) stream.
class RosenblattGenerator {
 public:
  static constexpr std::size_t kDefaultInner = 256;

  RosenblattGenerator(double H, std::size_t N, std::size_t n_inner = kDefaultInner,
                      double C = 1.0)
      : H_(check_args(H, N, n_inner, C)),
        N_(N),
        n_inner_(n_inner),
        C_(C),
        driver_(0.5 * H, N * n_inner),
        block_sd_(std::sqrt(block_sum_variance(0.5 * H, n_inner))) {}

  /// Var(sum_{i<=n} (X_i^2 - 1)) = 2 sum_{|k|<n} (n - |k|) rho_d(k)^2.
  static double block_sum_variance(double d, std::size_t n) {
    const auto rho = farima_autocorrelation(d, n);
    double acc = 0.0;
    for (std::size_t k = n - 1; k >= 1; --k) {
      acc += static_cast<double>(n - k) * rho[k] * rho[k];
    }
    return 2.0 * (static_cast<double>(n) + 2.0 * acc);
  }

  double block_sd() const noexcept { return block_sd_; }

  TimeSeries generate(SeedSpec seed) const {
    const auto x = driver_.sample(seed);
    TimeSeries out;
    out.values.resize(N_);
    const double factor = C_ / block_sd_;
    for (std::size_t j = 0; j < N_; ++j) {
      double s = 0.0;
      const std::size_t base = j * n_inner_;
      for (std::size_t i = 0; i < n_inner_; ++i) {
        const double v = x[base + i];
        s += v * v - 1.0;
      }
      out.values[j] = factor * s;
    }
    out.meta.kind = ProcessKind::rosenblatt;
    out.meta.H = H_;
    out.meta.C = C_;
    out.meta.d = 0.5 * H_;
    out.meta.n_inner = n_inner_;
    out.meta.method = "hermite-block-sum";
    out.meta.seed = seed;
    return out;
  }

 private:
  static double check_args(double H, std::size_t N, std::size_t n_inner, double C) {
    detail::check_hurst(H);
    require(N >= 2, ErrorKind::range, "N must be >= 2");
    require(n_inner >= 64, ErrorKind::domain, "n_inner must be >= 64");
    require(C > 0.0, ErrorKind::domain, "C must be positive");
    return H;
  }

  double H_;
  std::size_t N_;
  std::size_t n_inner_;
  double C_;
  FarimaGenerator driver_;
  double block_sd_;
};

inline TimeSeries simulate_rosenblatt_increments(double H, std::size_t N,
                                                 std::size_t n_inner, double C,
                                                 SeedSpec seed) {
  return RosenblattGenerator(H, N, n_inner, C).generate(seed);
}

}  // namespace rwhittle
