#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "rwhittle/periodogram.hpp"
#include "rwhittle/simulate.hpp"

using namespace rwhittle;

namespace {

double mean(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Non-demeaned lag-k autocovariance (1/N) sum x_t x_{t+k}.
double acov(const std::vector<double>& x, std::size_t k) {
  double acc = 0.0;
  for (std::size_t t = 0; t + k < x.size(); ++t) acc += x[t] * x[t + k];
  return acc / static_cast<double>(x.size());
}

double skewness(const std::vector<double>& x) {
  const double m = mean(x);
  double m2 = 0, m3 = 0;
  for (double v : x) {
    m2 += (v - m) * (v - m);
    m3 += (v - m) * (v - m) * (v - m);
  }
  m2 /= x.size();
  m3 /= x.size();
  return m3 / std::pow(m2, 1.5);
}

double gamma_ratio_rho(double d, double k) {
  return std::exp(std::lgamma(k + d) + std::lgamma(1 - d) - std::lgamma(k - d + 1) -
                  std::lgamma(d));
}

}  // namespace

TEST(FarimaCoefficients, Recursion) {
  const auto psi = farima_ma_coefficients(0.35, 2);
  EXPECT_EQ(psi[0], 1.0);
  EXPECT_NEAR(psi[1], 0.35, 1e-15);
  EXPECT_NEAR(psi[2], 0.23625, 1e-15);
}

TEST(FarimaCoefficients, StirlingAsymptotics) {
  const std::size_t m = 10000;
  const double d = 0.25;
  const auto psi = farima_ma_coefficients(d, m);
  EXPECT_NEAR(psi[m] * std::tgamma(d) * std::pow(double(m), 1 - d), 1.0, 0.02);
}

TEST(FarimaCoefficients, PositiveDecreasing) {
  for (double d : {0.05, 0.25, 0.45}) {
    const auto psi = farima_ma_coefficients(d, 500);
    for (std::size_t j = 1; j < psi.size(); ++j) {
      EXPECT_GT(psi[j], 0.0);
      if (j + 1 < psi.size()) {
        EXPECT_LT(psi[j + 1], psi[j]);
      }
    }
  }
}

TEST(FarimaCoefficients, DomainErrors) {
  EXPECT_THROW(farima_ma_coefficients(0.0, 5), Error);
  EXPECT_THROW(farima_ma_coefficients(0.5, 5), Error);
  EXPECT_THROW(farima_ma_coefficients(-0.1, 5), Error);
}

TEST(Farima, TotalVarianceMatchesCoefficientSum) {
  const double d = 0.2;
  const auto psi = farima_ma_coefficients(d, 2000000);
  double s = 0;
  for (auto it = psi.rbegin(); it != psi.rend(); ++it) s += *it * *it;
  EXPECT_NEAR(s / farima_total_variance(d), 1.0, 1e-4);
}

TEST(Farima, AutocorrelationMatchesGammaRatio) {
  for (double d : {0.1, 0.25, 0.45}) {
    const auto rho = farima_autocorrelation(d, 1000);
    EXPECT_NEAR(rho[1], d / (1 - d), 1e-15);
    for (std::size_t k : {1, 2, 7, 100, 1000}) {
      EXPECT_NEAR(rho[k] / gamma_ratio_rho(d, double(k)), 1.0, 1e-10);
    }
  }
}

TEST(Farima, DefaultTruncationMeetsDeficit) {
  const std::size_t m = farima_default_truncation(0.2);
  EXPECT_LT(farima_variance_deficit(0.2, m), kMaxVarianceDeficit);
  EXPECT_GE(farima_variance_deficit(0.2, m - 1), kMaxVarianceDeficit);
  EXPECT_THROW(farima_default_truncation(0.35), Error);
}

TEST(Farima, TruncationErrorWhenDeficitTooLarge) {
  try {
    simulate_farima(0.25, 100, 50, SeedSpec{1, 0});
    FAIL() << "expected a truncation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::truncation);
  }
}

TEST(Farima, TruncatedMomentsAndDeterminism) {
  const double d = 0.25;
  const std::size_t m = farima_default_truncation(d);
  const auto x = simulate_farima(d, 100000, m, SeedSpec{11, 0});
  const auto y = simulate_farima(d, 100000, m, SeedSpec{11, 0});
  EXPECT_EQ(x.values, y.values);
  EXPECT_NEAR(acov(x.values, 0), 1.0, 0.05);
  EXPECT_NEAR(acov(x.values, 1) / acov(x.values, 0), 1.0 / 3.0, 0.02);
}

TEST(Farima, ExactMoments) {
  for (double d : {0.25, 0.35, 0.45}) {
    const auto x = simulate_farima_exact(d, 100000, SeedSpec{12, 0});
    EXPECT_NEAR(acov(x.values, 0), 1.0, 0.1) << d;
    EXPECT_NEAR(acov(x.values, 1) / acov(x.values, 0), d / (1 - d), 0.02) << d;
  }
}

TEST(Fgn, WhiteNoiseAtHalf) {
  const auto x = simulate_fgn(0.5, 100000, SeedSpec{3, 0});
  EXPECT_LT(std::abs(acov(x.values, 1) / acov(x.values, 0)), 0.01);
}

TEST(Fgn, AutocovarianceMatchesCovariogram) {
  const auto x = simulate_fgn(0.7, 1 << 14, SeedSpec{4, 0});
  EXPECT_EQ(x.meta.method, "circulant-embedding");
  for (std::size_t k = 0; k <= 5; ++k) {
    const double want = k == 0 ? 1.0 : covariogram(0.7, 1.0, double(k));
    EXPECT_NEAR(acov(x.values, k), want, 0.03) << "lag " << k;
  }
}

TEST(Fgn, Deterministic) {
  EXPECT_EQ(simulate_fgn(0.8, 3000, SeedSpec{9, 2}).values,
            simulate_fgn(0.8, 3000, SeedSpec{9, 2}).values);
  EXPECT_NE(simulate_fgn(0.8, 3000, SeedSpec{9, 2}).values,
            simulate_fgn(0.8, 3000, SeedSpec{9, 3}).values);
}

TEST(Fgn, EmbeddingIsNonnegativeOverPersistentRange) {
  for (double H : {0.51, 0.7, 0.9, 0.99}) {
    auto row = detail::embedding_row(5000, [H](std::size_t k) {
      return k == 0 ? 1.0 : covariogram(H, 1.0, double(k));
    });
    EXPECT_TRUE(CirculantGaussian(row, 5000).valid()) << H;
  }
}

TEST(Fgn, StreamsAreUncorrelated) {
  const auto a = simulate_fgn(0.7, 10000, SeedSpec{5, 0});
  const auto b = simulate_fgn(0.7, 10000, SeedSpec{5, 1});
  double ab = 0;
  for (std::size_t i = 0; i < a.size(); ++i) ab += a.values[i] * b.values[i];
  EXPECT_LT(std::abs(ab / a.size()), 0.05);
}

TEST(Levinson, ReproducesCovariance) {
  const std::size_t n = 12, reps = 6000;
  std::vector<double> acvs(n);
  for (std::size_t k = 0; k < n; ++k) acvs[k] = k == 0 ? 1.0 : covariogram(0.8, 1.0, double(k));
  std::vector<double> c0(n, 0.0);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto x = simulate_gaussian_levinson(acvs, n, GaussianStream(SeedSpec{21, r}));
    for (std::size_t k = 0; k < n; ++k) c0[k] += x[n - 1] * x[n - 1 - k];
  }
  for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(c0[k] / reps, acvs[k], 0.06) << k;
}

TEST(Rosenblatt, BlockVarianceMatchesDoubleSum) {
  for (double d : {0.3, 0.425}) {
    const std::size_t n = 64;
    const auto rho = farima_autocorrelation(d, n);
    double want = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double r = rho[i > j ? i - j : j - i];
        want += 2.0 * r * r;
      }
    }
    EXPECT_NEAR(RosenblattGenerator::block_sum_variance(d, n) / want, 1.0, 1e-12);
  }
}

TEST(Rosenblatt, MomentsAtModerateMemory) {
  const auto y = simulate_rosenblatt_increments(0.7, 10000, 256, 1.0, SeedSpec{31, 0});
  const double m = mean(y.values);
  double v = 0.0;
  for (double x : y.values) v += (x - m) * (x - m);
  v /= y.size() - 1;
  EXPECT_NEAR(acov(y.values, 0), 1.0, 0.1);
  // Effective sample size of a long-memory mean: N^{2-2H}.
  EXPECT_LT(std::abs(m), 3.0 * std::sqrt(v) / std::pow(10000.0, 1.0 - 0.7));
  EXPECT_GT(skewness(y.values), 0.0);
}

// A single path has sd ~0.07 for this statistic at H = 0.85, so the check is
// on the mean over independent paths.
TEST(Rosenblatt, LagOneCorrelation) {
  const RosenblattGenerator g(0.85, 10000, 256);
  const std::size_t reps = 20;
  double acc = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto y = g.generate(SeedSpec{32, r});
    acc += acov(y.values, 1) / acov(y.values, 0);
  }
  EXPECT_NEAR(acc / reps, covariogram(0.85, 1.0, 1.0), 0.05);
}

TEST(Rosenblatt, InnerResolutionKeepsSecondOrderStructure) {
  const std::size_t reps = 30, n = 2000;
  const RosenblattGenerator coarse(0.7, n, 128), fine(0.7, n, 512);
  for (std::size_t k = 0; k <= 3; ++k) {
    double sa = 0, sa2 = 0, sb = 0, sb2 = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      const double a = acov(coarse.generate(SeedSpec{33, r}).values, k);
      const double b = acov(fine.generate(SeedSpec{34, r}).values, k);
      sa += a;
      sa2 += a * a;
      sb += b;
      sb2 += b * b;
    }
    const double ma = sa / reps, mb = sb / reps;
    const double se = std::sqrt((sa2 / reps - ma * ma + sb2 / reps - mb * mb) / (reps - 1));
    EXPECT_LT(std::abs(ma - mb), 3.0 * se) << "lag " << k;
  }
}

TEST(Rosenblatt, ScaleAndDeterminism) {
  const RosenblattGenerator g1(0.75, 500, 64, 1.0), g2(0.75, 500, 64, 2.0);
  const auto a = g1.generate(SeedSpec{1, 4});
  const auto b = g2.generate(SeedSpec{1, 4});
  EXPECT_EQ(a.values, g1.generate(SeedSpec{1, 4}).values);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_DOUBLE_EQ(b.values[i], 2.0 * a.values[i]);
  EXPECT_EQ(a.meta.kind, ProcessKind::rosenblatt);
  EXPECT_EQ(a.meta.n_inner, 64u);
}

TEST(Rosenblatt, StreamsAreUncorrelated) {
  const RosenblattGenerator g(0.7, 10000, 64);
  const auto a = g.generate(SeedSpec{8, 0});
  const auto b = g.generate(SeedSpec{8, 1});
  double ab = 0;
  for (std::size_t i = 0; i < a.size(); ++i) ab += a.values[i] * b.values[i];
  EXPECT_LT(std::abs(ab / a.size()), 0.05);
}

TEST(Rosenblatt, DomainErrors) {
  EXPECT_THROW(RosenblattGenerator(0.5, 100, 64), Error);
  EXPECT_THROW(RosenblattGenerator(1.0, 100, 64), Error);
  EXPECT_THROW(RosenblattGenerator(0.7, 100, 32), Error);
  EXPECT_THROW(RosenblattGenerator(0.7, 100, 64, 0.0), Error);
}

TEST(TimeSeries, Validation) {
  TimeSeries s;
  s.values = {1.0};
  EXPECT_THROW(s.validate(), Error);
  s.values = {1.0, NAN};
  EXPECT_THROW(s.validate(), Error);
  s.values = {1.0, 2.0};
  EXPECT_NO_THROW(s.validate());
}
