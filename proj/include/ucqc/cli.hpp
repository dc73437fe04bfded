#pragma once

#include "ucqc/scenarios.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ucqc::cli {

enum class Command
{
  BipartiteSweep,
  Ghz,
  Ckw,
  Verify
};

enum class Format
{
  Csv,
  Json
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int verification_failed = 2;
} // namespace exit_code

struct RunConfig
{
  Command command = Command::BipartiteSweep;
  int grid_points = 101;
  BellFamily family = BellFamily::PhiPlus;
  std::optional<double> alpha;
  std::string output_path; // empty writes to the output stream
  Format format = Format::Csv;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  int samples = 20;
  int first_measured = 4;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

/// Real numbers in tables: 12 significant digits, '.' separator.
std::string format_real(double x);

void write_table(SweepResult const &result, Format format, std::ostream &os);
void write_table(std::vector<GhzReport> const &reports, Format format, std::ostream &os);
void write_table(std::vector<CkwScanRow> const &rows, Format format, std::ostream &os);
void write_table(VerificationReport const &report, Format format, std::ostream &os);

/// Writes to `path`; throws std::runtime_error naming the path on I/O failure.
template <typename Result> void write_table(Result const &result, Format format, std::string const &path);

/// Executes a validated config. Status lines go to `out` and diagnostics to `err`.
int run_command(RunConfig const &config, std::ostream &out, std::ostream &err);

/// Parses argv-style arguments (without the program name) and runs them.
int cli_main(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace ucqc::cli
