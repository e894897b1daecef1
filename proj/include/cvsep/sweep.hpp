#ifndef CVSEP_SWEEP_HPP
#define CVSEP_SWEEP_HPP

#include "cvsep/decoherence.hpp"
#include "cvsep/separability.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cvsep {

enum class TableFormat { csv, tsv };

TableFormat parse_table_format(std::string_view name);

/// Raised when a result table cannot be written; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepRequest {
  ChannelScenario<double> scenario;
  std::vector<double> grid;  ///< strictly increasing values of r in [0, 1]
  std::filesystem::path output_path;
  TableFormat format = TableFormat::csv;
};

struct SweepRow {
  double r;
  double delta;
  bool separable;
  double oracle_nu;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// `points` uniform values on [0, 1], both endpoints included.
std::vector<double> uniform_grid(std::size_t points = 401);

void validate_grid(const std::vector<double>& grid);

/// Evaluates evolve, simon_delta and ppt_oracle at every grid point. Rows are
/// in grid order regardless of how evaluation is scheduled.
SweepResult run_sweep(const SweepRequest& request);

/// run_sweep followed by writing the table to request.output_path.
SweepResult run_sweep_to_file(const SweepRequest& request);

/// Fixed-point text with 9 significant digits, no exponent, '.' separator.
std::string format_number(double value);

void write_sweep(const SweepResult& result, std::ostream& out, TableFormat format = TableFormat::csv);
void write_sweep(const SweepResult& result, const std::filesystem::path& path,
                 TableFormat format = TableFormat::csv);

// ---------------------------------------------------------------------------
// Two-curve comparison at s_c = 1, n_bar = 1: reservoirs thermal on both
// modes versus one mode squeezed with s_e1 = 0.5.

struct Figure1Row {
  double r;
  double delta_thermal;
  double delta_squeezed;
};

inline constexpr double kFigure1SystemSqueezing = 1.0;
inline constexpr double kFigure1ThermalPhotons = 1.0;
inline constexpr double kFigure1ReservoirSqueezing = 0.5;

ChannelScenario<double> figure1_thermal_scenario();
ChannelScenario<double> figure1_squeezed_scenario();

std::vector<Figure1Row> figure1_curves(std::size_t points = 401);

void write_figure1(const std::vector<Figure1Row>& rows, std::ostream& out,
                   TableFormat format = TableFormat::csv);
void write_figure1(const std::vector<Figure1Row>& rows, const std::filesystem::path& path,
                   TableFormat format = TableFormat::csv);

}  // namespace cvsep

#endif  // CVSEP_SWEEP_HPP
