#pragma once

#include "lps/config.hpp"

#include <ostream>
#include <string>

namespace lps {

struct RunOptions {
  /// Written as a header line unless empty.
  std::string timestamp;
};

/// Executes cfg.task, writes the report to `report` and a one-line summary
/// to `log`. Returns 0 when every assertion of the task held, 1 otherwise
/// (the worst record is echoed to `err`). Throws ConfigError for invalid
/// configurations.
int run(const RunConfig& cfg, std::ostream& report, std::ostream& log, std::ostream& err,
        const RunOptions& options = {});

}  // namespace lps
