// Acceptance report: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed below.

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "rwhittle/rwhittle.hpp"

using namespace rwhittle;

namespace {

constexpr double pi = std::numbers::pi;

// Monte Carlo seeds; the Rosenblatt cells share the seed of configs/table1.cfg.
constexpr std::uint64_t kTableSeed = 20130501;
constexpr std::uint64_t kBenchSeed = 777;
constexpr std::uint64_t kRateSeed = 4242;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
}

void note(const std::string& text) {
  std::printf("      %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

McReport run_cells(ProcessKind process, std::vector<double> hs, std::vector<std::size_t> ns,
                   std::size_t reps, std::vector<EstimatorKind> est, std::uint64_t seed) {
  McConfig c;
  c.process = process;
  c.H_list = std::move(hs);
  c.N_list = std::move(ns);
  c.replications = reps;
  c.n_inner = 256;
  c.estimators = std::move(est);
  c.master_seed = seed;
  return run_monte_carlo(c);
}

const CellStats& stats(const McReport& r, double H, std::size_t N,
                       EstimatorKind e = EstimatorKind::whittle) {
  const McCell* c = r.find(r.config.process, H, N, e);
  if (!c) fail(ErrorKind::range, "missing cell");
  return c->stats;
}

// ---------------------------------------------------------------- criteria

void normalization() {
  boost::math::quadrature::tanh_sinh<double> ts;
  double worst = 0.0, worst_h = 0.0;
  for (int i = 0; i < 9; ++i) {
    const double H = 0.55 + 0.05 * i;
    const double v =
        2.0 * ts.integrate([&](double l) { return std::log(normalized_density(H, l)); }, 0.0, pi);
    if (std::abs(v) >= worst) {
      worst = std::abs(v);
      worst_h = H;
    }
  }
  report(worst < 1e-6, "normalization int log g = 0",
         fmt("max |int log g_H| = %.2e at H = %.2f (tol 1e-6)", worst, worst_h));
}

void fourier_consistency() {
  constexpr long M = 2000;
  double worst = 0.0;
  std::string where;
  double worst_closed = 0.0;
  for (double H : {0.6, 0.75, 0.9}) {
    const SpectralModel model(LongMemoryParams(H, 1.0));
    for (double l : {pi / 4, pi / 2, 3 * pi / 4, pi}) {
      double acc = covariogram(H, 1.0, 0.0);
      for (long k = 1; k <= M; ++k) acc += 2.0 * covariogram(H, 1.0, double(k)) * std::cos(k * l);
      const double partial = acc / (2 * pi);
      const double f = model.density(l);
      const double rel = std::abs(partial / f - 1.0);
      // Remainder closed by summation by parts: -r(M+1) sin((M+1/2)l) / (2 sin(l/2)).
      const double tail =
          -covariogram(H, 1.0, double(M + 1)) * std::sin((M + 0.5) * l) / (2 * std::sin(l / 2));
      const double closed = (acc + 2.0 * tail) / (2 * pi);
      worst_closed = std::max(worst_closed, std::abs(closed / f - 1.0));
      note(fmt("H=%.2f lambda=%.4f  f=%.6e  partial(2000) rel err %.2e  tail-closed rel err %.2e",
               H, l, f, rel, std::abs(closed / f - 1.0)));
      if (rel > worst) {
        worst = rel;
        where = fmt("H = %.2f, lambda = %.4f", H, l);
      }
    }
  }
  report(worst < 1e-3, "fourier series |k| <= 2000",
         fmt("max rel err %.2e at %s (tol 1e-3); tail-closed max %.2e", worst, where.c_str(),
             worst_closed));
}

void periodogram_exactness() {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 64; ++n) {
    std::vector<double> y(n);
    GaussianStream(SeedSpec{n, 1}).fill(y);
    const auto g = periodogram_grid(y, true);
    double m = 0.0;
    for (double v : y) m += v;
    m /= double(n);
    for (std::size_t k = 1; k <= n; ++k) {
      std::complex<double> acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        acc += (y[j] - m) * std::polar(1.0, -double(j) * pi * double(k) / double(n));
      }
      worst = std::max(worst, std::abs(g.ordinates[k - 1] - std::norm(acc) / (2 * pi * n)));
    }
  }
  // Parseval on the padded half-grid: (2pi/N) [I(0)/2 + sum_{k<N} I(pi k/N) + I(pi)/2] = r(0).
  const std::size_t N = 1024;
  std::vector<double> y(N);
  GaussianStream(SeedSpec{N, 2}).fill(y);
  const auto g = periodogram_grid(y, false);
  double s = 0.0;
  for (double v : y) s += v;
  const double i0 = s * s / (2 * pi * N);
  double acc = 0.5 * i0 + 0.5 * g.ordinate(N);
  for (std::size_t k = 1; k < N; ++k) acc += g.ordinate(k);
  const double r0 = sample_autocov(y, 0);
  const double parseval = std::abs(2 * pi / N * acc / r0 - 1.0);
  const double one_sided = std::abs(integrated_periodogram(g, [](double) { return 1.0; }) / r0 - 1.0);
  report(worst < 1e-12 && parseval < 1e-10, "periodogram exactness",
         fmt("brute force max abs diff %.2e (tol 1e-12, N <= 64); Parseval rel err %.2e "
             "(tol 1e-10, N = 1024)",
             worst, parseval));
  note(fmt("one-sided sum over k = 1..N without endpoint weights: rel err %.2e", one_sided));
}

struct Benchmarks {
  McReport table_n1000;  // rosenblatt H = .55, .75, .95 at N = 1000
  McReport table_n5000;  // rosenblatt H = .65, .75 at N = 5000, whittle + lw
};

void table_cells(const Benchmarks& b) {
  const auto& a = stats(b.table_n1000, 0.55, 1000);
  const auto& c = stats(b.table_n1000, 0.75, 1000);
  const auto& d = stats(b.table_n5000, 0.75, 5000);
  const bool ok = std::abs(a.mean - 0.570) <= 0.03 && a.std >= 0.015 && a.std <= 0.060 &&
                  std::abs(c.mean - 0.736) <= 0.04 && std::abs(d.mean - 0.743) <= 0.03 &&
                  d.std >= 0.015 && d.std <= 0.058;
  report(ok, "table cells (100 reps, n_inner 256)",
         fmt("(0.55,1000) mean %.4f std %.4f; (0.75,1000) mean %.4f; (0.75,5000) mean %.4f "
             "std %.4f",
             a.mean, a.std, c.mean, d.mean, d.std));
}

void gaussian_benchmark() {
  const auto r = run_cells(ProcessKind::fgn, {0.7}, {5000}, 200, {EstimatorKind::whittle},
                           kBenchSeed);
  const auto& s = stats(r, 0.7, 5000);
  const bool ok = std::abs(s.mean - 0.7) <= 0.02 && s.std <= 0.02 && s.std >= 0.005;
  report(ok, "fgn benchmark (H 0.7, N 5000)",
         fmt("mean %.4f (|bias| <= 0.02), std %.4f (in [0.005, 0.02])", s.mean, s.std));
}

void rate_property() {
  const auto ros = run_cells(ProcessKind::rosenblatt, {0.75}, {1000, 4000}, 200,
                             {EstimatorKind::whittle}, kRateSeed);
  const auto fgn = run_cells(ProcessKind::fgn, {0.7}, {1000, 4000}, 200,
                             {EstimatorKind::whittle}, kRateSeed);
  const auto rr = rate_check(ros).ratios.at(0);
  const auto fr = rate_check(fgn).ratios.at(0);
  report(rr.factor <= 1.6 && fr.factor <= 1.4, "rate ratios N 1000 -> 4000",
         fmt("rosenblatt %.4f vs %.4f (factor %.3f <= 1.6); fgn %.4f vs %.4f (factor %.3f <= 1.4)",
             rr.empirical, rr.theory, rr.factor, fr.empirical, fr.theory, fr.factor));
  for (const auto& row : rate_check(ros).scaled) {
    note(fmt("rosenblatt N=%zu std %.4f  std*N^(1-H) %.4f  |gamma| %.4f / %.4f", row.N, row.std,
             row.scaled, row.gamma_plus.value_or(NAN), row.gamma_minus.value_or(NAN)));
  }
}

void monotone(const Benchmarks& b) {
  const double s1 = stats(b.table_n1000, 0.55, 1000).std;
  const double s2 = stats(b.table_n1000, 0.75, 1000).std;
  const double s3 = stats(b.table_n1000, 0.95, 1000).std;
  report(s1 < s2 && s2 < s3, "std increasing in H (N 1000)",
         fmt("std %.4f < %.4f < %.4f at H = 0.55, 0.75, 0.95", s1, s2, s3));
}

void local_whittle(const Benchmarks& b) {
  const double w = stats(b.table_n5000, 0.65, 5000).std;
  const double l = stats(b.table_n5000, 0.65, 5000, EstimatorKind::lw).std;
  report(l >= 1.5 * w, "local whittle std >= 1.5x whittle",
         fmt("H 0.65, N 5000: lw std %.4f, whittle std %.4f, ratio %.2f", l, w, l / w));
}

template <class F>
bool serial_equals_parallel(std::size_t jobs, F make) {
  using R = decltype(make(std::size_t{0}));
  std::vector<R> serial, again(jobs), parallel(jobs);
  for (std::size_t i = 0; i < jobs; ++i) serial.push_back(make(i));
  for (std::size_t i = 0; i < jobs; ++i) again[i] = make(i);
  {
    std::vector<std::jthread> threads;
    for (std::size_t i = 0; i < jobs; ++i) {
      threads.emplace_back([&, i] { parallel[i] = make(i); });
    }
  }
  return serial == again && serial == parallel;
}

void determinism() {
  std::vector<std::string> bad;
  auto check = [&](const char* name, bool ok) {
    if (!ok) bad.push_back(name);
  };
  check("fgn", serial_equals_parallel(4, [](std::size_t i) {
          return simulate_fgn(0.7, 3000, SeedSpec{1, i}).values;
        }));
  check("fgn levinson", serial_equals_parallel(4, [](std::size_t i) {
          std::vector<double> acvs(1500);
          for (std::size_t k = 0; k < acvs.size(); ++k) acvs[k] = covariogram(0.8, 1.0, double(k));
          return simulate_gaussian_levinson(acvs, acvs.size(), GaussianStream(SeedSpec{2, i}));
        }));
  check("farima exact", serial_equals_parallel(4, [](std::size_t i) {
          return simulate_farima_exact(0.3, 3000, SeedSpec{3, i}).values;
        }));
  check("farima truncated", serial_equals_parallel(4, [](std::size_t i) {
          return simulate_farima(0.3, 2000, farima_default_truncation(0.3), SeedSpec{4, i}).values;
        }));
  check("rosenblatt", serial_equals_parallel(4, [](std::size_t i) {
          return simulate_rosenblatt_increments(0.75, 1000, 256, 1.0, SeedSpec{5, i}).values;
        }));
  check("whittle", serial_equals_parallel(4, [](std::size_t i) {
          const auto f = estimate_whittle(simulate_fgn(0.7, 2000, SeedSpec{6, i}));
          return std::vector<double>{f.H_hat, f.C_hat, f.sigma2_hat, f.objective_at_opt};
        }));
  check("local whittle", serial_equals_parallel(4, [](std::size_t i) {
          const auto f = estimate_local_whittle(simulate_fgn(0.7, 2000, SeedSpec{7, i}));
          return std::vector<double>{f.H_hat, f.objective_at_opt};
        }));
  check("kde", serial_equals_parallel(2, [](std::size_t i) {
          std::vector<double> x(500);
          GaussianStream(SeedSpec{8, i}).fill(x);
          return kde_silverman(x).density;
        }));
  McConfig c;
  c.H_list = {0.6, 0.8};
  c.N_list = {256, 512};
  c.replications = 8;
  c.n_inner = 64;
  c.estimators = {EstimatorKind::whittle, EstimatorKind::lw};
  c.master_seed = 9;
  const auto serial = report_payload(run_monte_carlo(c)).dump();
  const bool same_twice = report_payload(run_monte_carlo(c)).dump() == serial;
  c.workers = 4;
  const bool same_parallel = report_payload(run_monte_carlo(c)).dump() == serial;
  check("mc repeat", same_twice);
  check("mc parallel", same_parallel);
  std::string detail = "generators, estimators, kde and mc bitwise identical serial/parallel";
  if (!bad.empty()) {
    detail = "mismatch:";
    for (const auto& b : bad) detail += " " + b;
  }
  report(bad.empty(), "determinism", detail);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  auto guarded = [](const char* name, const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception& e) {
      report(false, name, std::string("threw: ") + e.what());
    }
  };
  guarded("normalization", normalization);
  guarded("fourier series", fourier_consistency);
  guarded("periodogram exactness", periodogram_exactness);
  guarded("determinism", determinism);

  Benchmarks b;
  guarded("table runs", [&] {
    b.table_n1000 = run_cells(ProcessKind::rosenblatt, {0.55, 0.75, 0.95}, {1000}, 100,
                              {EstimatorKind::whittle}, kTableSeed);
    b.table_n5000 = run_cells(ProcessKind::rosenblatt, {0.65, 0.75}, {5000}, 100,
                              {EstimatorKind::whittle, EstimatorKind::lw}, kTableSeed);
  });
  if (!b.table_n1000.cells.empty() && !b.table_n5000.cells.empty()) {
    guarded("table cells", [&] { table_cells(b); });
    guarded("monotone", [&] { monotone(b); });
    guarded("local whittle", [&] { local_whittle(b); });
  }
  guarded("fgn benchmark", gaussian_benchmark);
  guarded("rate ratios", rate_property);

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d criteria failed, %.0f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
