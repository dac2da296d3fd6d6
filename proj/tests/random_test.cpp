#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rwhittle/random.hpp"

using rwhittle::GaussianStream;
using rwhittle::Philox4x32;
using rwhittle::SeedSpec;

// Known-answer vectors of the reference Random123 distribution.
TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32::generate({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = Philox4x32::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                        {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox4x32::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                        {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out[0], 0xd16cfe09u);
  EXPECT_EQ(out[1], 0x94fdccebu);
  EXPECT_EQ(out[2], 0x5001e420u);
  EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(GaussianStream, FillMatchesPointwiseDraws) {
  const GaussianStream s(SeedSpec{7, 3});
  std::vector<double> a(101);
  s.fill(a, 5);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], s.normal(5 + i));
}

TEST(GaussianStream, Deterministic) {
  std::vector<double> a(1000), b(1000);
  GaussianStream(SeedSpec{42, 9}).fill(a);
  GaussianStream(SeedSpec{42, 9}).fill(b);
  EXPECT_EQ(a, b);
}

TEST(GaussianStream, Moments) {
  const std::size_t n = 200000;
  std::vector<double> z(n);
  GaussianStream(SeedSpec{1, 0}).fill(z);
  double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
  for (double v : z) {
    m1 += v;
    m2 += v * v;
    m3 += v * v * v;
    m4 += v * v * v * v;
  }
  m1 /= n;
  m2 /= n;
  m3 /= n;
  m4 /= n;
  EXPECT_NEAR(m1, 0.0, 0.01);
  EXPECT_NEAR(m2, 1.0, 0.01);
  EXPECT_NEAR(m3, 0.0, 0.03);
  EXPECT_NEAR(m4, 3.0, 0.06);
}

TEST(GaussianStream, StreamsAreUncorrelated) {
  const std::size_t n = 10000;
  std::vector<double> a(n), b(n), c(n);
  GaussianStream(SeedSpec{5, 0}).fill(a);
  GaussianStream(SeedSpec{5, 1}).fill(b);
  GaussianStream(SeedSpec{6, 0}).fill(c);
  double ab = 0, ac = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ab += a[i] * b[i];
    ac += a[i] * c[i];
  }
  EXPECT_LT(std::abs(ab / n), 0.05);
  EXPECT_LT(std::abs(ac / n), 0.05);
}
