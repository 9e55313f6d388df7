// lps <task> --config <path> [--seed S] [--out PATH] [--format csv|jsonl] [--threads N] [--no-timestamp]
//
// Exit status: 0 all assertions held, 1 numerical assertion failed, 2 invalid configuration.

#include "lps/run.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>

namespace {

constexpr const char* kThreadsEnv = "LPS_THREADS";

int parse_threads(const std::string& field, const std::string& value) {
  if (value == "auto") return 0;
  try {
    std::size_t used = 0;
    const int n = std::stoi(value, &used);
    if (used != value.size() || n < 0) throw std::invalid_argument(value);
    return n;
  } catch (const std::exception&) {
    throw lps::ConfigError(field, "expected a non-negative integer or \"auto\", got \"" + value + "\"");
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Littlewood-Paley and Calderon-Zygmund checks for Laguerre expansions"};
  std::string task, config_path, out, format, threads;
  std::uint64_t seed = 0;
  bool no_timestamp = false;
  app.add_option("task", task, "basis | kernel | gfun | verify | czscan | lemmas")->required();
  app.add_option("--config", config_path, "key = value configuration file")->required();
  auto* seed_opt = app.add_option("--seed", seed, "sampler seed (overrides the config)");
  app.add_option("--out", out, "report path (default lps_<task>.<format>)");
  app.add_option("--format", format, "csv or jsonl");
  app.add_option("--threads", threads, "worker count or \"auto\"");
  app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp header line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    lps::RunConfig cfg = lps::load_config(config_path);
    cfg.task = lps::parse_task(task);
    if (*seed_opt) cfg.seed = seed;
    if (!out.empty()) cfg.output = out;
    if (!format.empty()) {
      if (format == "csv") cfg.format = lps::ReportFormat::csv;
      else if (format == "jsonl") cfg.format = lps::ReportFormat::jsonl;
      else throw lps::ConfigError("format", "expected csv or jsonl, got \"" + format + "\"");
    }
    if (!threads.empty()) cfg.threads = parse_threads("threads", threads);
    if (const char* env = std::getenv(kThreadsEnv); env && *env) cfg.threads = parse_threads(kThreadsEnv, env);
    lps::validate(cfg);

    if (cfg.output.empty())
      cfg.output = "lps_" + task + (cfg.format == lps::ReportFormat::csv ? ".csv" : ".jsonl");
    std::ofstream report(cfg.output, std::ios::binary);
    if (!report) throw lps::ConfigError("output", "cannot open \"" + cfg.output + "\" for writing");

    lps::RunOptions options;
    if (!no_timestamp) options.timestamp = utc_timestamp();
    return lps::run(cfg, report, std::cout, std::cerr, options);
  } catch (const lps::ConfigError& e) {
    std::cerr << "lps: invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "lps: error: " << e.what() << '\n';
    return 1;
  }
}
