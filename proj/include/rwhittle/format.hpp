#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>

#include "rwhittle/error.hpp"

namespace rwhittle {

/// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  require(res.ec == std::errc() && res.ptr == end, ErrorKind::parse,
          "not a number: '" + std::string(text) + "'");
  return v;
}

inline std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  require(res.ec == std::errc() && res.ptr == end, ErrorKind::parse,
          "not a non-negative integer: '" + std::string(text) + "'");
  return v;
}

inline std::size_t parse_size(std::string_view text) {
  return static_cast<std::size_t>(parse_u64(text));
}

}  // namespace rwhittle
