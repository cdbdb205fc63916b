#pragma once

// The CLI commands as in-process functions. Each writes its report to `out`,
// diagnostics to `err`, CSV artifacts under ScanConfig::out_dir, and returns
// the process exit code.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "mafol/burns.hpp"

namespace mafol {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kCheckFailure = 1;
inline constexpr int kInputError = 2;
}  // namespace exit_code

struct ScanConfig {
  double box_radius = 2.0;
  std::size_t samples = 1000;    // random samples when samples_per_axis == 0
  int samples_per_axis = 0;      // > 0 selects a cell-centred grid instead
  std::uint64_t seed = 20261016;
  double tol_rank = kDefaultTolRank;
  double tol_ma = 1e-9;
  bool tol_ma_set = false;       // burns uses its own 1e-8 default unless set
  double step = 1e-3;
  int burns_grid = 20;           // points per real axis for the Burns grid
  std::filesystem::path out_dir = ".";
  Execution exec = Execution::Parallel;
};

enum class CheckStatus { Pass, Fail, Skip, Inconclusive };

std::string_view to_string(CheckStatus s);

struct CheckOutcome {
  std::string name;
  CheckStatus status = CheckStatus::Skip;
  double measured = 0.0;
  double threshold = 0.0;
  double wall_seconds = 0.0;
};

struct TraceOptions {
  std::string point;  // "1,1" or "1+0.5i,-2i"
  double t_max = 2.0;
  int t_count = 21;
  double s_max = 6.283185307179586;
  int s_count = 33;
};

/// Comma-separated complex coordinates, each in the coefficient syntax of
/// the potential format. Throws Error on malformed text or wrong length.
CPoint parse_point(std::string_view text, int n);

int cmd_analyze(const std::filesystem::path& file, const ScanConfig& cfg, std::ostream& out,
                std::ostream& err);
int cmd_trace(const std::filesystem::path& file, const TraceOptions& opts, const ScanConfig& cfg,
              std::ostream& out, std::ostream& err);
int cmd_weights(const std::filesystem::path& file, const ScanConfig& cfg, std::ostream& out,
                std::ostream& err);
int cmd_burns(const std::filesystem::path& file, const ScanConfig& cfg, bool write_csv,
              std::ostream& out, std::ostream& err);

/// Runs the invariant suite over every *.pot file of `dir`. Expected outcomes
/// come from `dir/expectations.txt`, one line per file:
///
///     bad.pot: expect-nonMA expect-no-weights expect-burns-fail
///
/// Writes suite.csv plus one <name>.analyze.csv per potential.
int cmd_suite(const std::filesystem::path& dir, const ScanConfig& cfg, std::ostream& out,
              std::ostream& err);

/// CSV column documentation shown by --help.
std::string_view csv_columns_help();

}  // namespace mafol
