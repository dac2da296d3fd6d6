#pragma once

// Thin FFTW3 wrapper. Plans are created once per (kind, size) under a global
// lock with FFTW_ESTIMATE | FFTW_UNALIGNED, so the arithmetic never depends on
// buffer alignment or on which thread asked first; execution is lock-free.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include <fftw3.h>

#include "rwhittle/error.hpp"

namespace rwhittle::fft {

using Complex = std::complex<double>;

namespace detail {

enum class PlanKind { forward, backward, real_forward };

inline fftw_plan plan_for(PlanKind kind, std::size_t n) {
  static std::mutex mutex;
  static std::map<std::pair<PlanKind, std::size_t>, fftw_plan> plans;
  std::lock_guard lock(mutex);
  auto [it, fresh] = plans.try_emplace({kind, n}, nullptr);
  if (!fresh) return it->second;

  const int size = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan plan = nullptr;
  if (kind == PlanKind::real_forward) {
    std::vector<double> r(n);
    std::vector<Complex> c(n / 2 + 1);
    plan = fftw_plan_dft_r2c_1d(size, r.data(),
                                reinterpret_cast<fftw_complex*>(c.data()), flags);
  } else {
    std::vector<Complex> a(n);
    auto* ca = reinterpret_cast<fftw_complex*>(a.data());
    const int sign = kind == PlanKind::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    plan = fftw_plan_dft_1d(size, ca, ca, sign, flags);  // in place
  }
  if (plan == nullptr) {
    plans.erase(it);
    fail(ErrorKind::range, "FFTW could not plan a transform of this size");
  }
  it->second = plan;
  return plan;
}

inline void execute_in_place(PlanKind kind, std::span<Complex> data) {
  if (data.empty()) return;
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_for(kind, data.size()), p, p);
}

}  // namespace detail

/// X_k = sum_j x_j exp(-2 pi i jk/n), in place.
inline void forward_in_place(std::span<Complex> data) {
  detail::execute_in_place(detail::PlanKind::forward, data);
}

/// Unnormalized inverse x_j = sum_k X_k exp(+2 pi i jk/n), in place.
inline void backward_in_place(std::span<Complex> data) {
  detail::execute_in_place(detail::PlanKind::backward, data);
}

inline std::vector<Complex> forward(std::span<const Complex> in) {
  std::vector<Complex> out(in.begin(), in.end());
  forward_in_place(out);
  return out;
}

inline std::vector<Complex> backward(std::span<const Complex> in) {
  std::vector<Complex> out(in.begin(), in.end());
  backward_in_place(out);
  return out;
}

/// Real input zero-padded to length n; returns bins 0..n/2.
inline std::vector<Complex> forward_real(std::span<const double> in,
                                         std::size_t n) {
  require(in.size() <= n, ErrorKind::range, "padded length shorter than input");
  std::vector<double> work(n, 0.0);
  std::copy(in.begin(), in.end(), work.begin());
  std::vector<Complex> out(n / 2 + 1);
  fftw_execute_dft_r2c(detail::plan_for(detail::PlanKind::real_forward, n),
                       work.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

/// Smallest 2^a 3^b 5^c >= n.
inline std::size_t next_fast_size(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

}  // namespace rwhittle::fft
