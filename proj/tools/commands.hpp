#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"

namespace qstancu::cli {

enum ExitCode : int {
  kSuccess = 0,
  kToleranceFailure = 1,
  kConfigError = 2,
  kHypothesisFailure = 3,
};

struct RunOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides the config seed
  std::optional<int> threads;         // overrides the config thread count
};

int cmd_moments(const Config& cfg, const RunOptions& opt, std::ostream& log);
int cmd_converge(const Config& cfg, const RunOptions& opt, std::ostream& log);
int cmd_rates(const Config& cfg, const RunOptions& opt, std::ostream& log);
int cmd_bivariate(const Config& cfg, const RunOptions& opt, std::ostream& log);

/// Loads the config, dispatches on the command name and maps failures to
/// exit codes. Diagnostics go to err.
int run(const std::string& command, const std::string& config_path, const RunOptions& opt,
        std::ostream& log, std::ostream& err);

}  // namespace qstancu::cli
