#pragma once

#include <stdexcept>
#include <string>

namespace rwhittle {

/// Failure categories. The CLI maps each one to a distinct exit code.
enum class ErrorKind {
  domain,       // parameter outside its admissible set
  range,        // index or size out of range
  truncation,   // FARIMA truncation cannot meet the variance-deficit bound
  embedding,    // circulant embedding and Cholesky fallback both unusable
  degenerate,   // constant series, zero spread, ...
  instability,  // finite-difference derivative did not settle
  parse,        // malformed CSV / config / JSON
  io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::range: return "range";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::embedding: return "embedding";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::instability: return "instability";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace rwhittle
