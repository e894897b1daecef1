#include "cvsep/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <ostream>

namespace cvsep {

namespace {

char separator(TableFormat format) { return format == TableFormat::tsv ? '\t' : ','; }

template <typename WriteBody>
void write_file(const std::filesystem::path& path, WriteBody&& body) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  body(file);
  file.flush();
  if (!file) {
    throw IoError("failed while writing '" + path.string() + "'");
  }
}

}  // namespace

TableFormat parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "tsv") return TableFormat::tsv;
  throw std::invalid_argument("unknown table format '" + std::string(name) + "' (expected csv or tsv)");
}

std::vector<double> uniform_grid(std::size_t points) {
  if (points < 2) throw std::invalid_argument("a grid needs at least 2 points");
  std::vector<double> grid(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = static_cast<double>(i) / last;
  }
  return grid;
}

void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0 || grid[i] > 1.0) {
      throw std::invalid_argument("sweep grid values must lie in [0, 1]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("sweep grid must be strictly increasing");
    }
  }
}

SweepResult run_sweep(const SweepRequest& request) {
  validate_grid(request.grid);
  const VarianceMatrix<double> system = tmss_variance(request.scenario.system);
  const VarianceMatrix<double> environment = environment_variance(request.scenario);
  require_physical(system, "system state");
  require_physical(environment, "environment state");

  SweepResult result;
  result.rows.reserve(request.grid.size());
  for (double r : request.grid) {
    const auto v = verdict(evolve(system, environment, ChannelTime<double>::from_r(r)));
    result.rows.push_back({r, v.delta, v.separable, v.oracle_nu});
  }
  return result;
}

SweepResult run_sweep_to_file(const SweepRequest& request) {
  SweepResult result = run_sweep(request);
  write_sweep(result, request.output_path, request.format);
  return result;
}

std::string format_number(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("cannot format a non-finite value");
  }
  if (value == 0.0) return "0";
  // Round to 9 significant digits first so the decimal exponent is final.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8e", value);
  const char* e = std::strchr(buf, 'e');
  const int exponent = std::atoi(e + 1);
  const double rounded = std::strtod(buf, nullptr);
  const int decimals = std::max(0, 8 - exponent);
  std::string out(static_cast<std::size_t>(decimals) + 32 + static_cast<std::size_t>(std::max(0, exponent)), '\0');
  const int n = std::snprintf(out.data(), out.size(), "%.*f", decimals, rounded);
  out.resize(static_cast<std::size_t>(n));
  return out;
}

void write_sweep(const SweepResult& result, std::ostream& out, TableFormat format) {
  const char sep = separator(format);
  out << "r" << sep << "delta" << sep << "separable" << sep << "oracle_nu" << '\n';
  for (const auto& row : result.rows) {
    out << format_number(row.r) << sep << format_number(row.delta) << sep
        << (row.separable ? "true" : "false") << sep << format_number(row.oracle_nu) << '\n';
  }
}

void write_sweep(const SweepResult& result, const std::filesystem::path& path, TableFormat format) {
  write_file(path, [&](std::ostream& out) { write_sweep(result, out, format); });
}

ChannelScenario<double> figure1_thermal_scenario() {
  return {TwoModeSqueezedSpec<double>(kFigure1SystemSqueezing),
          EnvironmentModeSpec<double>::thermal(kFigure1ThermalPhotons),
          EnvironmentModeSpec<double>::thermal(kFigure1ThermalPhotons)};
}

ChannelScenario<double> figure1_squeezed_scenario() {
  return {TwoModeSqueezedSpec<double>(kFigure1SystemSqueezing),
          EnvironmentModeSpec<double>(kFigure1ThermalPhotons, kFigure1ReservoirSqueezing, 0.0),
          EnvironmentModeSpec<double>::thermal(kFigure1ThermalPhotons)};
}

std::vector<Figure1Row> figure1_curves(std::size_t points) {
  SweepRequest thermal{figure1_thermal_scenario(), uniform_grid(points), {}, TableFormat::csv};
  SweepRequest squeezed{figure1_squeezed_scenario(), thermal.grid, {}, TableFormat::csv};
  const SweepResult th = run_sweep(thermal);
  const SweepResult sq = run_sweep(squeezed);
  std::vector<Figure1Row> rows;
  rows.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    rows.push_back({th.rows[i].r, th.rows[i].delta, sq.rows[i].delta});
  }
  return rows;
}

void write_figure1(const std::vector<Figure1Row>& rows, std::ostream& out, TableFormat format) {
  const char sep = separator(format);
  out << "r" << sep << "delta_thermal" << sep << "delta_squeezed" << '\n';
  for (const auto& row : rows) {
    out << format_number(row.r) << sep << format_number(row.delta_thermal) << sep
        << format_number(row.delta_squeezed) << '\n';
  }
}

void write_figure1(const std::vector<Figure1Row>& rows, const std::filesystem::path& path,
                   TableFormat format) {
  write_file(path, [&](std::ostream& out) { write_figure1(rows, out, format); });
}

}  // namespace cvsep
