#pragma once

#include <algorithm>
#include <cstddef>
#include <string>

#include "rwhittle/error.hpp"

namespace rwhittle {

/// Interior margin used by every public constructor and by the estimators'
/// search interval: H is kept inside [1/2 + kHurstMargin, 1 - kHurstMargin].
inline constexpr double kHurstMargin = 1e-3;

inline double clamp_hurst(double H) {
  return std::clamp(H, 0.5 + kHurstMargin, 1.0 - kHurstMargin);
}

/// Law parameters (H, C) of the increment process.
class LongMemoryParams {
 public:
  /// Rejects H outside the open interval (1/2, 1) and C <= 0; values inside the
  /// interval but within kHurstMargin of an end are clamped.
  LongMemoryParams(double H, double C) : H_(H), C_(C) {
    require(H > 0.5 && H < 1.0, ErrorKind::domain,
            "H must lie in (1/2, 1), got " + std::to_string(H));
    require(C > 0.0, ErrorKind::domain,
            "C must be positive, got " + std::to_string(C));
    H_ = clamp_hurst(H);
  }

  double hurst() const noexcept { return H_; }
  double scale() const noexcept { return C_; }

 private:
  double H_;
  double C_;
};

/// Numerical knobs for the lattice sums and the integrals over [-pi, pi].
struct SpectralConfig {
  int truncation_order = 200;   // K: explicit lattice terms |k| <= K
  int quadrature_panels = 64;   // Q: geometric panels toward the origin
  double fd_step = 1e-3;        // step in H for derivative constants

  void validate() const {
    require(truncation_order >= 10, ErrorKind::domain,
            "truncation order K must be >= 10");
    require(quadrature_panels >= 64, ErrorKind::domain,
            "quadrature panel count Q must be >= 64");
    require(fd_step > 0.0 && fd_step < 0.01, ErrorKind::domain,
            "fd_step must lie in (0, 0.01)");
  }
};

}  // namespace rwhittle
