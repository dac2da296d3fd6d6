#pragma once

// Monte Carlo harness: replicated simulation + estimation over an (H, N) grid,
// summary tables, kernel density estimates and rate diagnostics.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rwhittle/error.hpp"
#include "rwhittle/estimators.hpp"
#include "rwhittle/fft.hpp"
#include "rwhittle/format.hpp"
#include "rwhittle/periodogram.hpp"
#include "rwhittle/simulate.hpp"
#include "rwhittle/spectral.hpp"

#ifndef RWHITTLE_VERSION
#define RWHITTLE_VERSION "0.0.0"
#endif

namespace rwhittle {

inline constexpr const char* kVersion = RWHITTLE_VERSION;

struct McConfig {
  ProcessKind process = ProcessKind::rosenblatt;
  std::vector<double> H_list;
  std::vector<std::size_t> N_list;
  std::size_t replications = 100;
  std::size_t n_inner = RosenblattGenerator::kDefaultInner;
  double C = 1.0;
  std::vector<EstimatorKind> estimators = {EstimatorKind::whittle};
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;
  WhittleOptions whittle;
  LocalWhittleOptions local_whittle;

  void validate() const {
    require(process == ProcessKind::rosenblatt || process == ProcessKind::fgn,
            ErrorKind::domain, "mc process must be rosenblatt or fgn");
    require(!H_list.empty() && !N_list.empty() && !estimators.empty(), ErrorKind::domain,
            "h_list, n_list and estimators must be non-empty");
    for (double H : H_list) {
      require(H > 0.5 && H < 1.0, ErrorKind::domain,
              "every H must lie in (1/2, 1), got " + format_double(H));
    }
    for (std::size_t N : N_list) {
      require(N >= 64, ErrorKind::domain, "every N must be >= 64, got " + std::to_string(N));
    }
    require(replications >= 2, ErrorKind::domain, "replications must be >= 2");
    require(n_inner >= 64, ErrorKind::domain, "n_inner must be >= 64");
    require(C > 0.0, ErrorKind::domain, "C must be positive");
    require(workers >= 1, ErrorKind::domain, "workers must be >= 1");
    whittle.validate();
  }
};

struct CellKey {
  ProcessKind process = ProcessKind::rosenblatt;
  double H = 0.0;
  std::size_t N = 0;
  EstimatorKind estimator = EstimatorKind::whittle;
};

struct CellStats {
  std::size_t n_ok = 0;
  double mean = std::numeric_limits<double>::quiet_NaN();
  double std = std::numeric_limits<double>::quiet_NaN();  // divisor n - 1
  double bias = std::numeric_limits<double>::quiet_NaN();
  double rmse = std::numeric_limits<double>::quiet_NaN();
  double skewness = std::numeric_limits<double>::quiet_NaN();
};

struct McCell {
  CellKey key;
  CellStats stats;
  std::vector<double> estimates;        // one per replication, NaN when it failed
  std::vector<double> scale_estimates;  // C_hat (Whittle only)
  std::size_t boundary_hits = 0;
  std::vector<std::string> errors;      // "replication r: message"
  bool partial = false;
};

struct McReport {
  McConfig config;
  std::vector<McCell> cells;
  double wall_time_s = 0.0;
  std::string version = kVersion;

  const McCell* find(ProcessKind process, double H, std::size_t N,
                     EstimatorKind estimator) const {
    for (const auto& c : cells) {
      if (c.key.process == process && c.key.H == H && c.key.N == N &&
          c.key.estimator == estimator) {
        return &c;
      }
    }
    return nullptr;
  }
};

/// Moments of the finite entries; NaN entries are failed replications.
inline CellStats describe(const std::vector<double>& values, double truth) {
  CellStats s;
  std::vector<double> ok;
  for (double v : values) {
    if (std::isfinite(v)) ok.push_back(v);
  }
  s.n_ok = ok.size();
  if (ok.empty()) return s;
  const double n = static_cast<double>(ok.size());
  double sum = 0.0;
  for (double v : ok) sum += v;
  s.mean = sum / n;
  s.bias = s.mean - truth;
  double m2 = 0.0, m3 = 0.0;
  for (double v : ok) {
    const double e = v - s.mean;
    m2 += e * e;
    m3 += e * e * e;
  }
  if (ok.size() >= 2) s.std = std::sqrt(m2 / (n - 1.0));
  s.rmse = std::sqrt(s.bias * s.bias + m2 / n);
  if (m2 > 0.0) s.skewness = (m3 / n) / std::pow(m2 / n, 1.5);
  return s;
}

namespace detail {

struct ReplicationResult {
  std::vector<double> h;      // per estimator
  std::vector<double> c;      // per estimator (NaN for lw)
  std::vector<bool> boundary;
  std::vector<std::string> error;
};

class CellSampler {
 public:
  CellSampler(const McConfig& config, double H, std::size_t N) : config_(config), H_(H), N_(N) {
    if (config.process == ProcessKind::rosenblatt) {
      rosenblatt_ = std::make_unique<RosenblattGenerator>(H, N, config.n_inner, config.C);
    }
  }

  TimeSeries sample(std::size_t replication) const {
    const SeedSpec seed{config_.master_seed, replication};
    if (rosenblatt_) return rosenblatt_->generate(seed);
    auto series = simulate_fgn(H_, N_, seed);
    if (config_.C != 1.0) {
      for (double& v : series.values) v *= config_.C;
      series.meta.C = config_.C;
    }
    return series;
  }

 private:
  const McConfig& config_;
  double H_;
  std::size_t N_;
  std::unique_ptr<RosenblattGenerator> rosenblatt_;
};

inline ReplicationResult run_replication(const McConfig& config, const CellSampler& sampler,
                                         const WhittleWorkspace& workspace,
                                         std::size_t replication) {
  const std::size_t ne = config.estimators.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ReplicationResult out{std::vector<double>(ne, nan), std::vector<double>(ne, nan),
                        std::vector<bool>(ne, false), std::vector<std::string>(ne)};
  std::optional<PeriodogramGrid> grid;
  std::string setup_error;
  try {
    grid = periodogram_grid(sampler.sample(replication), true);
  } catch (const std::exception& e) {
    setup_error = e.what();
  }
  for (std::size_t i = 0; i < ne; ++i) {
    if (!grid) {
      out.error[i] = setup_error;
      continue;
    }
    try {
      if (config.estimators[i] == EstimatorKind::whittle) {
        const auto fit = estimate_whittle(*grid, workspace);
        out.h[i] = fit.H_hat;
        out.c[i] = fit.C_hat;
        out.boundary[i] = fit.boundary_hit;
      } else {
        const auto fit = estimate_local_whittle(*grid, config.local_whittle);
        out.h[i] = fit.H_hat;
        const double margin = 2.0 * config.local_whittle.eps;
        out.boundary[i] = fit.d_hat <= config.local_whittle.eps + margin ||
                          fit.d_hat >= 0.5 - config.local_whittle.eps - margin;
      }
    } catch (const std::exception& e) {
      out.error[i] = e.what();
    }
  }
  return out;
}

}  // namespace detail

/// Runs every (H, N) cell. Replication r of every cell uses stream index r;
/// results are reduced in replication order, so the worker count never
/// changes the report.
inline McReport run_monte_carlo(const McConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  McReport report;
  report.config = config;
  const std::size_t reps = config.replications;
  const std::size_t ne = config.estimators.size();

  for (std::size_t N : config.N_list) {
    const WhittleWorkspace workspace(N, config.whittle);
    for (double H : config.H_list) {
      const detail::CellSampler sampler(config, H, N);
      std::vector<detail::ReplicationResult> results(reps);
      std::atomic<std::size_t> next{0};
      auto work = [&] {
        for (std::size_t r = next++; r < reps; r = next++) {
          results[r] = detail::run_replication(config, sampler, workspace, r);
        }
      };
      const std::size_t nthreads = std::min(config.workers, reps);
      if (nthreads <= 1) {
        work();
      } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(work);
      }

      for (std::size_t i = 0; i < ne; ++i) {
        McCell cell;
        cell.key = {config.process, H, N, config.estimators[i]};
        cell.estimates.resize(reps);
        if (config.estimators[i] == EstimatorKind::whittle) cell.scale_estimates.resize(reps);
        for (std::size_t r = 0; r < reps; ++r) {
          const auto& res = results[r];
          cell.estimates[r] = res.h[i];
          if (!cell.scale_estimates.empty()) cell.scale_estimates[r] = res.c[i];
          if (res.boundary[i]) ++cell.boundary_hits;
          if (!res.error[i].empty()) {
            cell.errors.push_back("replication " + std::to_string(r) + ": " + res.error[i]);
          }
        }
        cell.partial = !cell.errors.empty();
        cell.stats = describe(cell.estimates, H);
        report.cells.push_back(std::move(cell));
      }
    }
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ------------------------------------------------------------------ summary

/// One block per (process, N): columns are H values, rows are (mean, std)
/// pairs per estimator.
struct SummaryBlock {
  ProcessKind process = ProcessKind::rosenblatt;
  std::size_t N = 0;
  std::vector<double> H_values;
  std::vector<std::string> row_labels;      // "<estimator> mean", "<estimator> std"
  std::vector<std::vector<double>> rows;    // rows[i][j] for H_values[j]
};

inline std::vector<SummaryBlock> summarize_report(const McReport& report) {
  std::vector<SummaryBlock> blocks;
  const auto& cfg = report.config;
  for (std::size_t N : cfg.N_list) {
    SummaryBlock block;
    block.process = cfg.process;
    block.N = N;
    block.H_values = cfg.H_list;
    for (EstimatorKind est : cfg.estimators) {
      std::vector<double> means, stds;
      for (double H : cfg.H_list) {
        const McCell* cell = report.find(cfg.process, H, N, est);
        means.push_back(cell ? cell->stats.mean : std::numeric_limits<double>::quiet_NaN());
        stds.push_back(cell ? cell->stats.std : std::numeric_limits<double>::quiet_NaN());
      }
      block.row_labels.push_back(std::string(to_string(est)) + " mean");
      block.rows.push_back(std::move(means));
      block.row_labels.push_back(std::string(to_string(est)) + " std");
      block.rows.push_back(std::move(stds));
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

/// process,N,estimator,stat,H,value with one line per table entry.
inline std::string summary_csv(const std::vector<SummaryBlock>& blocks) {
  std::ostringstream os;
  os << "process,N,estimator,stat,H,value\n";
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows.size(); ++i) {
      const auto& label = b.row_labels[i];
      const auto space = label.find(' ');
      for (std::size_t j = 0; j < b.H_values.size(); ++j) {
        os << to_string(b.process) << ',' << b.N << ',' << label.substr(0, space) << ','
           << label.substr(space + 1) << ',' << format_double(b.H_values[j]) << ','
           << format_double(b.rows[i][j]) << '\n';
      }
    }
  }
  return os.str();
}

inline std::string summary_text(const std::vector<SummaryBlock>& blocks) {
  std::ostringstream os;
  char buf[64];
  for (const auto& b : blocks) {
    os << to_string(b.process) << ", N = " << b.N << '\n';
    std::snprintf(buf, sizeof buf, "%-14s", "H");
    os << buf;
    for (double H : b.H_values) {
      std::snprintf(buf, sizeof buf, "%10.3f", H);
      os << buf;
    }
    os << '\n';
    for (std::size_t i = 0; i < b.rows.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%-14s", b.row_labels[i].c_str());
      os << buf;
      for (double v : b.rows[i]) {
        std::snprintf(buf, sizeof buf, "%10.4f", v);
        os << buf;
      }
      os << '\n';
    }
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------- KDE

struct KdeEstimate {
  std::vector<double> grid;
  std::vector<double> density;
  double bandwidth = 0.0;
};

/// Linear interpolation quantile (type 7).
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

/// 0.9 min(s, IQR/1.34) n^{-1/5}; falls back to s when the IQR is zero.
inline double silverman_bandwidth(const std::vector<double>& samples) {
  require(samples.size() >= 2, ErrorKind::range, "bandwidth needs at least 2 samples");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double s = std::sqrt(ss / (n - 1.0));
  std::vector<double> sorted(samples);
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double spread = iqr > 0.0 ? std::min(s, iqr / 1.34) : s;
  require(spread > 0.0, ErrorKind::degenerate, "samples have zero spread");
  return 0.9 * spread * std::pow(n, -0.2);
}

/// Gaussian KDE on grid_size points spanning [min - 5h, max + 5h]: linear
/// binning, then circular convolution with the sampled kernel on a grid
/// padded so that no mass wraps around.
inline KdeEstimate kde_silverman(const std::vector<double>& samples,
                                 std::size_t grid_size = 512) {
  require(samples.size() >= 8, ErrorKind::range, "KDE needs at least 8 samples");
  require(grid_size >= 16, ErrorKind::range, "KDE grid needs at least 16 points");
  for (double v : samples) {
    require(std::isfinite(v), ErrorKind::domain, "KDE samples must be finite");
  }
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  require(*mn < *mx, ErrorKind::degenerate, "all KDE samples are equal");

  KdeEstimate out;
  out.bandwidth = silverman_bandwidth(samples);
  const double h = out.bandwidth;
  const double lo = *mn - 5.0 * h;
  const double hi = *mx + 5.0 * h;
  const std::size_t G = grid_size;
  const double delta = (hi - lo) / static_cast<double>(G - 1);
  out.grid.resize(G);
  for (std::size_t i = 0; i < G; ++i) out.grid[i] = lo + delta * static_cast<double>(i);

  std::vector<double> counts(G, 0.0);
  for (double v : samples) {
    const double pos = (v - lo) / delta;
    const auto i = std::min(static_cast<std::size_t>(pos), G - 2);
    const double frac = pos - static_cast<double>(i);
    counts[i] += 1.0 - frac;
    counts[i + 1] += frac;
  }

  const std::size_t P = fft::next_fast_size(2 * G);
  std::vector<fft::Complex> a(P), b(P);
  for (std::size_t i = 0; i < G; ++i) a[i] = counts[i];
  const double n = static_cast<double>(samples.size());
  const double norm = 1.0 / (n * h * std::sqrt(kTwoPi));
  for (std::size_t k = 0; k < P; ++k) {
    const double lag = static_cast<double>(k <= P / 2 ? k : P - k) * delta / h;
    b[k] = norm * std::exp(-0.5 * lag * lag);
  }
  fft::forward_in_place(a);
  fft::forward_in_place(b);
  for (std::size_t k = 0; k < P; ++k) a[k] *= b[k];
  fft::backward_in_place(a);
  out.density.resize(G);
  for (std::size_t i = 0; i < G; ++i) {
    out.density[i] = std::max(0.0, a[i].real() / static_cast<double>(P));
  }
  return out;
}

inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

// --------------------------------------------------------------- rate check

struct ScaledDispersion {
  ProcessKind process;
  EstimatorKind estimator;
  double H;
  std::size_t N;
  double std;
  double exponent;   // 1 - H for Rosenblatt, 1/2 for fGn
  double scaled;     // std N^exponent
  std::optional<double> gamma_plus;   // |gamma(H)| variants, Rosenblatt Whittle only
  std::optional<double> gamma_minus;
};

struct RatioRow {
  ProcessKind process;
  EstimatorKind estimator;
  double H;
  std::size_t N1;
  std::size_t N2;
  double empirical;   // std(N2) / std(N1)
  double theory;      // (N1/N2)^exponent
  double factor;      // max(empirical/theory, theory/empirical)
};

struct RateTable {
  std::vector<ScaledDispersion> scaled;
  std::vector<RatioRow> ratios;
};

inline double rate_exponent(ProcessKind process, double H) {
  return process == ProcessKind::rosenblatt ? 1.0 - H : 0.5;
}

inline RateTable rate_check(const McReport& report) {
  RateTable table;
  const auto& cfg = report.config;
  std::map<double, LimitConstants> constants;
  for (EstimatorKind est : cfg.estimators) {
    for (double H : cfg.H_list) {
      const double exponent = rate_exponent(cfg.process, H);
      std::vector<const McCell*> cells;
      for (std::size_t N : cfg.N_list) {
        if (const McCell* c = report.find(cfg.process, H, N, est)) cells.push_back(c);
      }
      for (const McCell* c : cells) {
        ScaledDispersion row{cfg.process, est, H, c->key.N, c->stats.std, exponent,
                             c->stats.std * std::pow(static_cast<double>(c->key.N), exponent),
                             std::nullopt, std::nullopt};
        if (cfg.process == ProcessKind::rosenblatt && est == EstimatorKind::whittle) {
          auto it = constants.find(H);
          if (it == constants.end()) {
            try {
              it = constants.emplace(H, limit_constants(H, cfg.whittle.spectral)).first;
            } catch (const Error&) {
            }
          }
          if (it != constants.end()) {
            row.gamma_plus = std::abs(it->second.gamma_one_plus_h);
            row.gamma_minus = std::abs(it->second.gamma_one_minus_h);
          }
        }
        table.scaled.push_back(row);
      }
      for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
          const double n1 = static_cast<double>(cells[i]->key.N);
          const double n2 = static_cast<double>(cells[j]->key.N);
          const double emp = cells[j]->stats.std / cells[i]->stats.std;
          const double th = std::pow(n1 / n2, exponent);
          table.ratios.push_back({cfg.process, est, H, cells[i]->key.N, cells[j]->key.N, emp,
                                  th, std::max(emp / th, th / emp)});
        }
      }
    }
  }
  return table;
}

inline std::string rates_csv(const RateTable& table) {
  std::ostringstream os;
  os << "kind,process,estimator,H,N1,N2,std_or_empirical,exponent_or_theory,scaled_or_factor,"
        "abs_gamma_plus,abs_gamma_minus\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& r : table.scaled) {
    os << "scaled," << to_string(r.process) << ',' << to_string(r.estimator) << ','
       << format_double(r.H) << ',' << r.N << ",," << format_double(r.std) << ','
       << format_double(r.exponent) << ',' << format_double(r.scaled) << ','
       << opt(r.gamma_plus) << ',' << opt(r.gamma_minus) << '\n';
  }
  for (const auto& r : table.ratios) {
    os << "ratio," << to_string(r.process) << ',' << to_string(r.estimator) << ','
       << format_double(r.H) << ',' << r.N1 << ',' << r.N2 << ',' << format_double(r.empirical)
       << ',' << format_double(r.theory) << ',' << format_double(r.factor) << ",,\n";
  }
  return os.str();
}

// ------------------------------------------------------------------- config

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace detail

/// Flat "key = value" text; '#' starts a comment. Keys: process, h_list,
/// n_list, reps, n_inner, c, estimators, seed, workers, grid_step, eps.
inline McConfig parse_mc_config(std::string_view text, McConfig base = {}) {
  McConfig cfg = std::move(base);
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(lineno);
    require(eq != std::string::npos, ErrorKind::parse, where + ": expected key = value");
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    require(!value.empty(), ErrorKind::parse, where + ": empty value for '" + key + "'");
    try {
      if (key == "process") {
        cfg.process = parse_process_kind(value);
      } else if (key == "h_list") {
        cfg.H_list.clear();
        for (const auto& v : detail::split_list(value)) cfg.H_list.push_back(parse_double(v));
      } else if (key == "n_list") {
        cfg.N_list.clear();
        for (const auto& v : detail::split_list(value)) cfg.N_list.push_back(parse_size(v));
      } else if (key == "reps") {
        cfg.replications = parse_size(value);
      } else if (key == "n_inner") {
        cfg.n_inner = parse_size(value);
      } else if (key == "c") {
        cfg.C = parse_double(value);
      } else if (key == "estimators") {
        cfg.estimators.clear();
        for (const auto& v : detail::split_list(value)) {
          cfg.estimators.push_back(parse_estimator_kind(v));
        }
      } else if (key == "seed") {
        cfg.master_seed = parse_u64(value);
      } else if (key == "workers") {
        cfg.workers = parse_size(value);
      } else if (key == "grid_step") {
        cfg.whittle.grid_step = parse_double(value);
        cfg.local_whittle.grid_step = cfg.whittle.grid_step;
      } else if (key == "eps") {
        cfg.whittle.eps = parse_double(value);
        cfg.local_whittle.eps = cfg.whittle.eps;
      } else {
        fail(ErrorKind::parse, "unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      fail(ErrorKind::parse, where + ": " + e.what());
    }
  }
  return cfg;
}

/// Inverse of parse_mc_config (numbers at round-trip precision). The worker
/// count does not affect results and is left out unless asked for.
inline std::string render_mc_config(const McConfig& cfg, bool with_workers = false) {
  std::ostringstream os;
  auto join = [](const auto& xs, auto fmt) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + fmt(xs[i]);
    return s;
  };
  os << "process = " << to_string(cfg.process) << '\n'
     << "h_list = " << join(cfg.H_list, [](double v) { return format_double(v); }) << '\n'
     << "n_list = " << join(cfg.N_list, [](std::size_t v) { return std::to_string(v); }) << '\n'
     << "reps = " << cfg.replications << '\n'
     << "n_inner = " << cfg.n_inner << '\n'
     << "c = " << format_double(cfg.C) << '\n'
     << "estimators = "
     << join(cfg.estimators, [](EstimatorKind e) { return std::string(to_string(e)); }) << '\n'
     << "seed = " << cfg.master_seed << '\n'
     << "grid_step = " << format_double(cfg.whittle.grid_step) << '\n'
     << "eps = " << format_double(cfg.whittle.eps) << '\n';
  if (with_workers) os << "workers = " << cfg.workers << '\n';
  return os.str();
}

}  // namespace rwhittle
