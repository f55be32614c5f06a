#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace liestab {

enum ExitCode : int { kExitPass = 0, kExitHypothesis = 1, kExitInput = 2, kExitDivergence = 3 };

struct RunConfig {
  std::string command;        // check, certify, simulate, deadbeat, reproduce
  std::string scenario_path;  // exactly one of scenario_path / builtin
  std::string builtin;
  std::optional<long> horizon;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  double tol = 1e-9;
  double epsilon = 0.0;  // certify: 0 selects the default gap
  std::optional<double> M;
};

/// Runs one command. Files go to config.out_dir, a summary to `out`,
/// diagnostics to `err`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and calls run.
int run_cli(int argc, char** argv);

}  // namespace liestab
