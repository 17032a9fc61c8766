#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace devsurf::io {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitCorners = 2,
  kExitRegression = 3,
  kExitNothingToRepair = 4,
};

/// Command-line flags; unset values fall back to the document's options and
/// then to the library defaults.
struct CommandOptions {
  std::string input;
  std::optional<std::size_t> samples;
  std::size_t rulings = 101;
  std::size_t across = 11;
  std::optional<std::size_t> subdivisions;
  std::optional<double> tol_coplanar;
  bool allow_regression = false;
  std::optional<char> master;
  /// Empty writes to the `out` stream.
  std::string out_path;
  unsigned threads = 0;
};

int run_check(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int run_solve(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int run_mesh(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int run_repair(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int run_report(const CommandOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace devsurf::io
