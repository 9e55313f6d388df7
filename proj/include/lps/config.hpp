#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lps {

enum class Task { basis, kernel, gfun, verify, czscan, lemmas };
enum class ReportFormat { csv, jsonl };

std::string to_string(Task t);
Task parse_task(const std::string& s);

/// Invalid configuration; `field` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Everything a run needs. Keys of the config file carry the same names.
struct RunConfig {
  std::optional<Task> task;
  int dimension = 0;
  std::vector<double> alpha;

  // grids and quadrature
  int zeta_order = 8;
  int zeta_levels = 40;
  double log_step = 0.125;
  int quadrature_order = 0;
  int jacobi_order = 96;
  int cutoff = 8;

  // sampler
  int samples = 100;
  std::optional<std::uint64_t> seed;
  double box_lo = 0.05;
  double box_hi = 10.0;

  // task selection
  std::string kind = "dT";
  std::string gfun_kind = "all";
  std::vector<std::string> subtasks = {"isometry", "horizontal", "kernels", "chapman",
                                       "subordination", "riesz", "counterexample"};
  std::vector<double> times = {0.1, 0.5, 1.0, 2.0};
  bool refine_check = true;

  // output
  std::string output;
  ReportFormat format = ReportFormat::csv;
  int threads = 0;  // 0 = one per hardware thread
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys and
/// malformed values raise ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Cross-field checks once command-line overrides are applied.
void validate(const RunConfig& cfg);

/// Subtasks of `verify` that need alpha in [-1/2, inf)^d.
bool needs_cz_range(const RunConfig& cfg);

}  // namespace lps
