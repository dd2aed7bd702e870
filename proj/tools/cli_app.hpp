#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cabledyn/model.hpp"
#include "cabledyn/rootfind.hpp"

namespace cabledyn::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kRootSearchShortfall = 2,
  kOracleMismatch = 3,
  kTheoremFailure = 4,
};

enum class OutputFormat { Table, Csv };

/// Everything a run needs, read from the JSON config document. Unknown keys
/// anywhere in the document are fatal.
struct RunConfig {
  ProblemDescription problem;
  RootSearchConfig solve;
  TimeWindow window{0.0, 0.0, 1};
  bool has_window = false;
  int oracle_nodes = 2000;
  double oracle_threshold = 5e-3;
  OutputFormat format = OutputFormat::Table;
  std::string output_path;  // empty means standard output
  std::uint64_t verify_seed = 1;
  int verify_trials = 50;
};

/// Parse and validate the config document. Throws ValidationError with the
/// offending key path on any problem.
RunConfig load_config(const std::string& path);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cabledyn::cli
