#pragma once

// Counter-based Gaussian variates keyed by (master_seed, stream_index,
// draw_index): any draw can be produced independently of every other one,
// so replications never share generator state.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace rwhittle {

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// Philox4x32-10 block function (Salmon et al., SC'11).
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Standard normal draws; draw i is a pure function of (seed, i).
class GaussianStream {
 public:
  explicit GaussianStream(SeedSpec seed) : seed_(seed) {}

  const SeedSpec& seed() const noexcept { return seed_; }

  double normal(std::uint64_t index) const {
    const auto pair = block_pair(index >> 1);
    return pair[index & 1u];
  }

  /// out[i] = normal(first + i).
  void fill(std::span<double> out, std::uint64_t first = 0) const {
    std::size_t i = 0;
    std::uint64_t idx = first;
    if ((idx & 1u) && i < out.size()) out[i++] = normal(idx++);
    for (; i + 1 < out.size(); i += 2, idx += 2) {
      const auto pair = block_pair(idx >> 1);
      out[i] = pair[0];
      out[i + 1] = pair[1];
    }
    if (i < out.size()) out[i] = normal(idx);
  }

 private:
  std::array<double, 2> block_pair(std::uint64_t block) const {
    const Philox4x32::Block ctr = {
        static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
        static_cast<std::uint32_t>(seed_.stream_index),
        static_cast<std::uint32_t>(seed_.stream_index >> 32)};
    const Philox4x32::Key key = {static_cast<std::uint32_t>(seed_.master_seed),
                                 static_cast<std::uint32_t>(seed_.master_seed >> 32)};
    const auto bits = Philox4x32::generate(ctr, key);
    // u1 in (0, 1] keeps the logarithm finite.
    const double u1 = (static_cast<double>(to_u64(bits[0], bits[1]) >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(to_u64(bits[2], bits[3]) >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  static std::uint64_t to_u64(std::uint32_t lo, std::uint32_t hi) {
    return (std::uint64_t{hi} << 32) | lo;
  }

  SeedSpec seed_;
};

}  // namespace rwhittle
