#pragma once

#include <ostream>

#include "rftswim/io.hpp"

namespace rftswim {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_invalid = 1,       // validate found a violation
  exit_parse = 2,         // bad arguments, config or input file
  exit_simulate = 3,      // simulation or planning failed
  exit_straighten = 4,    // NotStraightenable
  exit_unreachable = 5,   // TargetUnreachable or no feasible stroke
};

/// Settings shared by all subcommands, read from the JSON config.
struct RunConfig {
  DragCoefficients drag;
  Resolution res;
  double rho = 0.01;
  std::optional<double> duration;  // T; conventional units when unset
  std::size_t frames = 50;
  Json body;                       // the whole document
  std::filesystem::path base_dir;  // relative paths resolve here

  /// Throws ParseError or InvalidDrag.
  static RunConfig load(const std::filesystem::path& path, bool relaxed);
  std::filesystem::path resolve(const std::string& p) const;
};

/// Runs the tool as if invoked with argv. Messages go to out and err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rftswim
