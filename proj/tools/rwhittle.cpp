// rwhittle: simulate, periodogram, estimate, mc, kde, spectral-table.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rwhittle/rwhittle.hpp"

namespace {

using namespace rwhittle;

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  unexpected internal error\n"
    "  2  usage error (unknown flag, missing or malformed argument)\n"
    "  3  parse error (malformed CSV, sidecar or config file)\n"
    "  4  invalid parameter domain or range\n"
    "  5  numerical failure (truncation, embedding, degenerate data, instability)\n"
    "  6  i/o error\n"
    "Errors are reported on stderr as one line: error kind=<kind> code=<n> message=\"...\"";

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return 3;
    case ErrorKind::domain:
    case ErrorKind::range: return 4;
    case ErrorKind::truncation:
    case ErrorKind::embedding:
    case ErrorKind::degenerate:
    case ErrorKind::instability: return 5;
    case ErrorKind::io: return 6;
  }
  return 1;
}

int report_error(const std::string& kind, int code, std::string message) {
  for (char& ch : message) {
    if (ch == '\n' || ch == '\r') ch = ' ';
    if (ch == '"') ch = '\'';
  }
  std::cerr << "error kind=" << kind << " code=" << code << " message=\"" << message << "\"\n";
  return code;
}

void print_resolved(const CLI::App& sub) {
  std::cerr << "# " << sub.get_name() << " resolved configuration\n"
            << sub.config_to_str(true, false);
}

void emit(const std::optional<std::string>& out, const std::string& text) {
  if (out && *out != "-") {
    atomic_write_file(*out, text);
  } else {
    std::cout << text;
  }
}

// ------------------------------------------------------------------- options

struct SimulateArgs {
  std::string process = "rosenblatt";
  double H = 0.7;
  std::size_t N = 1000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t n_inner = RosenblattGenerator::kDefaultInner;
  double C = 1.0;
  double d = -1.0;
  std::string farima_method = "exact";
  std::size_t truncation = 0;
  std::string out;
};

struct PeriodogramArgs {
  std::string input;
  bool no_demean = false;
  std::optional<std::string> out;
};

struct EstimateArgs {
  std::string input;
  std::string estimator = "whittle";
  WhittleOptions whittle;
  std::size_t lw_m = 0;
  std::optional<std::string> out;
};

struct McArgs {
  std::string config;
  std::string out_dir = "mc_out";
  std::size_t workers = 0;
  std::size_t reps = 0;
  std::optional<std::uint64_t> seed;
  std::size_t kde_grid = 512;
};

struct KdeArgs {
  std::string input;
  std::size_t grid_size = 512;
  std::optional<std::string> out;
};

struct TableArgs {
  double H = 0.7;
  double C = 1.0;
  std::size_t points = 256;
  int truncation_order = 200;
  std::optional<std::string> out;
};

// ------------------------------------------------------------------ commands

void run_simulate(const SimulateArgs& a) {
  const auto kind = parse_process_kind(a.process);
  const SeedSpec seed{a.seed, a.stream};
  TimeSeries series;
  switch (kind) {
    case ProcessKind::fgn:
      series = simulate_fgn(a.H, a.N, seed);
      if (a.C != 1.0) {
        for (double& v : series.values) v *= a.C;
        series.meta.C = a.C;
      }
      break;
    case ProcessKind::rosenblatt:
      series = simulate_rosenblatt_increments(a.H, a.N, a.n_inner, a.C, seed);
      break;
    case ProcessKind::farima: {
      const double d = a.d >= 0.0 ? a.d : a.H - 0.5;
      if (a.farima_method == "exact") {
        series = simulate_farima_exact(d, a.N, seed);
      } else if (a.farima_method == "truncated") {
        const std::size_t m = a.truncation ? a.truncation : farima_default_truncation(d);
        series = simulate_farima(d, a.N, m, seed);
      } else {
        fail(ErrorKind::parse, "unknown FARIMA method '" + a.farima_method + "'");
      }
      break;
    }
    case ProcessKind::external:
      fail(ErrorKind::domain, "cannot simulate an external series");
  }
  write_series(a.out, series);
  std::cerr << "wrote " << a.out << " and " << sidecar_path(a.out).string() << '\n';
}

void run_periodogram(const PeriodogramArgs& a) {
  const auto series = read_series(a.input);
  const auto grid = periodogram_grid(series, !a.no_demean);
  std::string text = "k,lambda,I\n";
  for (std::size_t k = 1; k <= grid.n; ++k) {
    text += std::to_string(k) + "," + format_double(grid.frequency(k)) + "," +
            format_double(grid.ordinate(k)) + "\n";
  }
  emit(a.out, text);
}

void run_estimate(const EstimateArgs& a) {
  const auto series = read_series(a.input);
  const auto est = parse_estimator_kind(a.estimator);
  Json j{{"input", a.input}, {"n", series.size()}, {"estimator", a.estimator}};
  if (est == EstimatorKind::whittle) {
    const auto fit = estimate_whittle(series, a.whittle);
    j["H_hat"] = fit.H_hat;
    j["C_hat"] = fit.C_hat;
    j["sigma2_hat"] = fit.sigma2_hat;
    j["sigma2_integral"] = fit.sigma2_integral;
    j["objective"] = fit.objective_at_opt;
    j["n_evals"] = fit.n_evals;
    j["bracket"] = {fit.bracket_lo, fit.bracket_hi};
    j["boundary_hit"] = fit.boundary_hit;
    j["warnings"] = fit.warnings;
    j["options"] = {{"grid_step", a.whittle.grid_step},
                    {"eps", a.whittle.eps},
                    {"tolerance", a.whittle.tolerance},
                    {"truncation_order", a.whittle.spectral.truncation_order}};
    for (const auto& w : fit.warnings) std::cerr << "warning: " << w << '\n';
  } else {
    LocalWhittleOptions o;
    o.grid_step = a.whittle.grid_step;
    o.eps = a.whittle.eps;
    o.tolerance = a.whittle.tolerance;
    if (a.lw_m) o.m = a.lw_m;
    const auto fit = estimate_local_whittle(series, o);
    j["H_hat"] = fit.H_hat;
    j["d_hat"] = fit.d_hat;
    j["m"] = fit.m;
    j["objective"] = fit.objective_at_opt;
    j["n_evals"] = fit.n_evals;
  }
  j["source"] = to_json(series.meta);
  emit(a.out, j.dump(2) + "\n");
}

void run_mc(const McArgs& a) {
  McConfig cfg = parse_mc_config(read_text_file(a.config));
  if (a.reps) cfg.replications = a.reps;
  if (a.seed) cfg.master_seed = *a.seed;
  if (a.workers) {
    cfg.workers = a.workers;
  } else if (const char* env = std::getenv("RWHITTLE_WORKERS")) {
    cfg.workers = parse_size(env);
  }
  cfg.validate();
  std::cerr << "# mc effective configuration\n" << render_mc_config(cfg, true);
  const auto report = run_monte_carlo(cfg);
  const auto files = write_mc_artifacts(report, a.out_dir, a.kde_grid);
  std::cout << summary_text(summarize_report(report));
  for (const auto& cell : report.cells) {
    if (cell.partial) {
      std::cerr << "warning: cell H=" << format_double(cell.key.H) << " N=" << cell.key.N << ' '
                << to_string(cell.key.estimator) << " has " << cell.errors.size()
                << " failed replications\n";
    }
  }
  for (const auto& f : files) std::cerr << "wrote " << f.string() << '\n';
  std::cerr << "wall time " << report.wall_time_s << " s\n";
}

void run_kde(const KdeArgs& a) {
  const auto values = parse_series_csv(read_text_file(a.input));
  emit(a.out, kde_csv(kde_silverman(values, a.grid_size)));
}

void run_table(const TableArgs& a) {
  SpectralConfig sc;
  sc.truncation_order = a.truncation_order;
  const SpectralModel model(LongMemoryParams(a.H, a.C), sc);
  require(a.points >= 1, ErrorKind::range, "points must be >= 1");
  std::string text = "lambda,f,g\n";
  for (std::size_t i = 1; i <= a.points; ++i) {
    const double l = kPi * static_cast<double>(i) / static_cast<double>(a.points);
    text += format_double(l) + "," + format_double(model.density(l)) + "," +
            format_double(model.normalized_density(l)) + "\n";
  }
  emit(a.out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whittle estimation of (H, C) for Rosenblatt and fGn increments", "rwhittle"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.get_formatter()->column_width(44);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");
  app.set_version_flag("--version", std::string(kVersion));
  app.footer(kExitCodes);
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Simulate an increment series to CSV (+ JSON sidecar)");
  s->add_option("--process", sim.process, "fgn | farima | rosenblatt")
      ->check(CLI::IsMember({"fgn", "farima", "rosenblatt"}));
  s->add_option("--h", sim.H, "Hurst index");
  s->add_option("--n", sim.N, "Series length");
  s->add_option("--seed", sim.seed, "Master seed");
  s->add_option("--stream", sim.stream, "Stream index");
  s->add_option("--n-inner", sim.n_inner, "Rosenblatt inner block length");
  s->add_option("--c", sim.C, "Scale C");
  s->add_option("--d", sim.d, "FARIMA memory parameter (negative: H - 1/2)");
  s->add_option("--farima-method", sim.farima_method, "exact | truncated");
  s->add_option("--truncation", sim.truncation, "Truncated-MA order (0: automatic)");
  s->add_option("--out", sim.out, "Output CSV path")->required();

  PeriodogramArgs per;
  auto* p = app.add_subcommand("periodogram", "Periodogram on the grid pi k/N, k = 1..N");
  p->add_option("--input", per.input, "Series CSV")->required();
  p->add_flag("--no-demean", per.no_demean, "Skip mean correction");
  p->add_option("--out", per.out, "Output CSV (default stdout)");

  EstimateArgs est;
  auto* e = app.add_subcommand("estimate", "Estimate H (and C) from a series CSV; JSON output");
  e->add_option("--input", est.input, "Series CSV")->required();
  e->add_option("--estimator", est.estimator, "whittle | lw")
      ->check(CLI::IsMember({"whittle", "lw"}));
  e->add_option("--grid-step", est.whittle.grid_step, "Coarse search grid step");
  e->add_option("--eps", est.whittle.eps, "Search interval margin");
  e->add_option("--tolerance", est.whittle.tolerance, "Final bracket width");
  e->add_option("--truncation-order", est.whittle.spectral.truncation_order,
                "Lattice-sum truncation K");
  e->add_option("--lw-m", est.lw_m, "Local-Whittle bandwidth (0: floor(N^0.65))");
  e->add_option("--out", est.out, "Output JSON (default stdout)");

  McArgs mc;
  auto* m = app.add_subcommand("mc", "Monte Carlo study from a key = value config file");
  m->add_option("--config", mc.config, "Config file")->required();
  m->add_option("--out-dir", mc.out_dir, "Output directory");
  m->add_option("--workers", mc.workers, "Worker threads (0: RWHITTLE_WORKERS, else config, else 1)");
  m->add_option("--reps", mc.reps, "Override replications (0: from config)");
  m->add_option("--seed", mc.seed, "Override master seed (default: from config)");
  m->add_option("--kde-grid", mc.kde_grid, "KDE grid size");

  KdeArgs kde;
  auto* k = app.add_subcommand("kde", "Silverman-bandwidth Gaussian KDE of a one-column CSV");
  k->add_option("--input", kde.input, "Samples CSV")->required();
  k->add_option("--grid-size", kde.grid_size, "Grid points");
  k->add_option("--out", kde.out, "Output CSV (default stdout)");

  TableArgs tab;
  auto* t = app.add_subcommand("spectral-table", "Tabulate f_{H,C} and g_H on (0, pi]");
  t->add_option("--h", tab.H, "Hurst index");
  t->add_option("--c", tab.C, "Scale C");
  t->add_option("--points", tab.points, "Number of frequencies pi i/points");
  t->add_option("--truncation-order", tab.truncation_order, "Lattice-sum truncation K");
  t->add_option("--out", tab.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    return report_error("usage", 2, ex.what());
  }

  try {
    if (*s) {
      print_resolved(*s);
      run_simulate(sim);
    } else if (*p) {
      print_resolved(*p);
      run_periodogram(per);
    } else if (*e) {
      print_resolved(*e);
      run_estimate(est);
    } else if (*m) {
      print_resolved(*m);
      run_mc(mc);
    } else if (*k) {
      print_resolved(*k);
      run_kde(kde);
    } else if (*t) {
      print_resolved(*t);
      run_table(tab);
    }
  } catch (const Error& ex) {
    return report_error(to_string(ex.kind()), exit_code(ex.kind()), ex.what());
  } catch (const std::exception& ex) {
    return report_error("internal", 1, ex.what());
  }
  return 0;
}
