#pragma once

// Series CSV, JSON sidecars and Monte Carlo artifacts. Every file is written
// to a temporary sibling and renamed into place.

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rwhittle/error.hpp"
#include "rwhittle/estimators.hpp"
#include "rwhittle/experiments.hpp"
#include "rwhittle/format.hpp"
#include "rwhittle/simulate.hpp"

namespace rwhittle {

using Json = nlohmann::ordered_json;

inline void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorKind::io, "cannot create directory " + dir.string() + ": " + ec.message());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(os), ErrorKind::io, "cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) {
      os.close();
      fs::remove(tmp, ec);
      fail(ErrorKind::io, "write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    fail(ErrorKind::io, "cannot rename into " + path.string() + ": " + ec.message());
  }
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  require(static_cast<bool>(is), ErrorKind::io, "cannot open " + path.string());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// ------------------------------------------------------------------- series

/// One value per line. Blank lines and lines starting with '#' are skipped;
/// a single non-numeric first line is accepted as a header.
inline std::vector<double> parse_series_csv(std::string_view text) {
  std::vector<double> values;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool header_allowed = true;
  while (std::getline(is, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string_view field(line.data() + b, e - b + 1);
    double v = 0.0;
    try {
      v = parse_double(field);
    } catch (const Error&) {
      const bool alpha = !field.empty() && (std::isalpha(static_cast<unsigned char>(field[0])) ||
                                            field[0] == '_');
      if (header_allowed && values.empty() && alpha && field.find(',') == std::string::npos) {
        header_allowed = false;
        continue;
      }
      fail(ErrorKind::parse, "line " + std::to_string(lineno) + ": malformed value '" +
                                 std::string(field) + "'");
    }
    require(std::isfinite(v), ErrorKind::parse,
            "line " + std::to_string(lineno) + ": non-finite value '" + std::string(field) + "'");
    values.push_back(v);
    header_allowed = false;
  }
  return values;
}

inline std::string series_csv(const std::vector<double>& values) {
  std::string out;
  out.reserve(values.size() * 24);
  for (double v : values) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

inline Json to_json(const SeedSpec& s) {
  return Json{{"master_seed", s.master_seed}, {"stream_index", s.stream_index}};
}

inline Json to_json(const SeriesMeta& m) {
  return Json{{"process", to_string(m.kind)}, {"H", m.H},       {"C", m.C},
              {"d", m.d},                     {"n_inner", m.n_inner},
              {"truncation", m.truncation},   {"method", m.method},
              {"seed", to_json(m.seed)}};
}

inline SeriesMeta meta_from_json(const Json& j) {
  try {
    SeriesMeta m;
    m.kind = parse_process_kind(j.at("process").get<std::string>());
    m.H = j.value("H", 0.0);
    m.C = j.value("C", 0.0);
    m.d = j.value("d", 0.0);
    m.n_inner = j.value("n_inner", std::size_t{0});
    m.truncation = j.value("truncation", std::size_t{0});
    m.method = j.value("method", std::string());
    if (j.contains("seed")) {
      m.seed.master_seed = j["seed"].value("master_seed", std::uint64_t{0});
      m.seed.stream_index = j["seed"].value("stream_index", std::uint64_t{0});
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("malformed sidecar: ") + e.what());
  }
}

inline std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto p = csv;
  p += ".json";
  return p;
}

inline void write_series(const std::filesystem::path& path, const TimeSeries& series) {
  atomic_write_file(path, series_csv(series.values));
  Json side = to_json(series.meta);
  side["n"] = series.size();
  side["version"] = kVersion;
  atomic_write_file(sidecar_path(path), side.dump(2) + "\n");
}

/// Reads values and, when "<path>.json" exists, the provenance sidecar.
inline TimeSeries read_series(const std::filesystem::path& path) {
  TimeSeries series;
  series.values = parse_series_csv(read_text_file(path));
  const auto side = sidecar_path(path);
  if (std::filesystem::exists(side)) {
    Json j;
    try {
      j = Json::parse(read_text_file(side));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::parse, std::string("malformed sidecar: ") + e.what());
    }
    series.meta = meta_from_json(j);
  }
  series.validate();
  return series;
}

// ------------------------------------------------------------------ reports

/// JSON number, or null for NaN / infinities.
inline Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline Json to_json(const McConfig& c) {
  Json est = Json::array();
  for (auto e : c.estimators) est.push_back(to_string(e));
  return Json{{"process", to_string(c.process)},
              {"h_list", c.H_list},
              {"n_list", c.N_list},
              {"reps", c.replications},
              {"n_inner", c.n_inner},
              {"c", c.C},
              {"estimators", est},
              {"seed", c.master_seed},
              {"grid_step", c.whittle.grid_step},
              {"eps", c.whittle.eps},
              {"truncation_order", c.whittle.spectral.truncation_order},
              {"quadrature_panels", c.whittle.spectral.quadrature_panels}};
}

inline Json to_json(const McCell& cell) {
  Json raw = Json::array();
  for (double v : cell.estimates) raw.push_back(number_or_null(v));
  Json j{{"process", to_string(cell.key.process)},
         {"H", cell.key.H},
         {"N", cell.key.N},
         {"estimator", to_string(cell.key.estimator)},
         {"n_ok", cell.stats.n_ok},
         {"mean", number_or_null(cell.stats.mean)},
         {"std", number_or_null(cell.stats.std)},
         {"bias", number_or_null(cell.stats.bias)},
         {"rmse", number_or_null(cell.stats.rmse)},
         {"skewness", number_or_null(cell.stats.skewness)},
         {"boundary_hits", cell.boundary_hits},
         {"partial", cell.partial},
         {"errors", cell.errors},
         {"estimates", raw}};
  if (!cell.scale_estimates.empty()) {
    Json c = Json::array();
    for (double v : cell.scale_estimates) c.push_back(number_or_null(v));
    j["C_estimates"] = c;
  }
  return j;
}

/// Everything except the wall time: identical for identical configs.
inline Json report_payload(const McReport& report) {
  Json cells = Json::array();
  for (const auto& c : report.cells) cells.push_back(to_json(c));
  return Json{{"version", report.version}, {"config", to_json(report.config)}, {"cells", cells}};
}

inline Json to_json(const McReport& report) {
  Json j = report_payload(report);
  j["wall_time_s"] = report.wall_time_s;
  return j;
}

/// "# key = value" comment lines carrying the config echo.
inline std::string config_comment(const McConfig& config) {
  std::string out = "# rwhittle " + std::string(kVersion) + "\n";
  std::istringstream is(render_mc_config(config));
  std::string line;
  while (std::getline(is, line)) out += "# " + line + "\n";
  return out;
}

inline std::string kde_csv(const KdeEstimate& kde) {
  std::string out = "# bandwidth = " + format_double(kde.bandwidth) + "\nx,density\n";
  for (std::size_t i = 0; i < kde.grid.size(); ++i) {
    out += format_double(kde.grid[i]) + "," + format_double(kde.density[i]) + "\n";
  }
  return out;
}

/// report.json, table.csv, rates.csv (when some cell pair shares H) and
/// kde_<H>_<N>.csv for every Whittle cell with enough finite estimates.
/// Returns the written paths.
inline std::vector<std::filesystem::path> write_mc_artifacts(const McReport& report,
                                                             const std::filesystem::path& dir,
                                                             std::size_t kde_grid = 512) {
  std::vector<std::filesystem::path> written;
  const std::string echo = config_comment(report.config);
  auto put = [&](const std::string& name, const std::string& body) {
    atomic_write_file(dir / name, body);
    written.push_back(dir / name);
  };
  put("report.json", to_json(report).dump(2) + "\n");
  put("table.csv", echo + summary_csv(summarize_report(report)));
  const auto rates = rate_check(report);
  if (!rates.ratios.empty()) put("rates.csv", echo + rates_csv(rates));
  for (const auto& cell : report.cells) {
    if (cell.key.estimator != EstimatorKind::whittle) continue;
    std::vector<double> ok;
    for (double v : cell.estimates) {
      if (std::isfinite(v)) ok.push_back(v);
    }
    if (ok.size() < 8) continue;
    try {
      const auto kde = kde_silverman(ok, kde_grid);
      put("kde_" + format_double(cell.key.H) + "_" + std::to_string(cell.key.N) + ".csv",
          echo + kde_csv(kde));
    } catch (const Error&) {
      // all estimates equal: no density to draw
    }
  }
  return written;
}

}  // namespace rwhittle
