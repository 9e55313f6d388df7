#include "lps/config.hpp"

#include "lps/czcheck.hpp"
#include "lps/gfunctions.hpp"
#include "lps/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace lps {

namespace {

const std::vector<std::string> kTaskNames = {"basis", "kernel", "gfun", "verify", "czscan", "lemmas"};
const std::vector<std::string> kSubtasks = {"isometry", "horizontal", "kernels", "chapman", "subordination",
                                            "riesz",    "counterexample", "czscan", "lemmas"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError(key, "expected a number, got '" + v + "'");
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError(key, "expected an integer, got '" + v + "'");
  return x;
}

int to_positive_int(const std::string& key, const std::string& v) {
  const long long x = to_int(key, v);
  if (x < 1 || x > 1'000'000'000) throw ConfigError(key, "expected a positive integer, got '" + v + "'");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"task", [](RunConfig& c, const std::string& k, const std::string& v) {
         try {
           c.task = parse_task(v);
         } catch (const std::invalid_argument& e) {
           throw ConfigError(k, e.what());
         }
       }},
      {"dimension", [](RunConfig& c, const std::string& k, const std::string& v) { c.dimension = to_positive_int(k, v); }},
      {"alpha", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.alpha.clear();
         for (const auto& item : split_list(v)) c.alpha.push_back(to_double(k, item));
         if (c.alpha.empty()) throw ConfigError(k, "expected a comma-separated list of numbers");
       }},
      {"zeta_order", [](RunConfig& c, const std::string& k, const std::string& v) { c.zeta_order = to_positive_int(k, v); }},
      {"zeta_levels", [](RunConfig& c, const std::string& k, const std::string& v) { c.zeta_levels = to_positive_int(k, v); }},
      {"log_step", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.log_step = to_double(k, v);
         if (!(c.log_step > 0.0 && c.log_step <= 1.0)) throw ConfigError(k, "must lie in (0, 1]");
       }},
      {"quadrature_order", [](RunConfig& c, const std::string& k, const std::string& v) {
         const long long x = to_int(k, v);
         if (x < 0 || x > 2000) throw ConfigError(k, "must lie in [0, 2000] (0 = automatic)");
         c.quadrature_order = static_cast<int>(x);
       }},
      {"jacobi_order", [](RunConfig& c, const std::string& k, const std::string& v) { c.jacobi_order = to_positive_int(k, v); }},
      {"cutoff", [](RunConfig& c, const std::string& k, const std::string& v) {
         const long long x = to_int(k, v);
         if (x < 0 || x > 400) throw ConfigError(k, "must lie in [0, 400]");
         c.cutoff = static_cast<int>(x);
       }},
      {"samples", [](RunConfig& c, const std::string& k, const std::string& v) { c.samples = to_positive_int(k, v); }},
      {"seed", [](RunConfig& c, const std::string& k, const std::string& v) {
         const long long x = to_int(k, v);
         if (x < 0) throw ConfigError(k, "must be nonnegative");
         c.seed = static_cast<std::uint64_t>(x);
       }},
      {"box_lo", [](RunConfig& c, const std::string& k, const std::string& v) { c.box_lo = to_double(k, v); }},
      {"box_hi", [](RunConfig& c, const std::string& k, const std::string& v) { c.box_hi = to_double(k, v); }},
      {"kind", [](RunConfig& c, const std::string&, const std::string& v) { c.kind = v; }},
      {"gfun_kind", [](RunConfig& c, const std::string&, const std::string& v) { c.gfun_kind = v; }},
      {"subtasks", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.subtasks = split_list(v);
         for (const auto& s : c.subtasks)
           if (std::find(kSubtasks.begin(), kSubtasks.end(), s) == kSubtasks.end())
             throw ConfigError(k, "unknown subtask '" + s + "'");
       }},
      {"times", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.times.clear();
         for (const auto& item : split_list(v)) {
           const double t = to_double(k, item);
           if (!(t > 0.0)) throw ConfigError(k, "times must be positive");
           c.times.push_back(t);
         }
         if (c.times.empty()) throw ConfigError(k, "expected at least one time");
       }},
      {"refine_check", [](RunConfig& c, const std::string& k, const std::string& v) { c.refine_check = to_bool(k, v); }},
      {"output", [](RunConfig& c, const std::string&, const std::string& v) { c.output = v; }},
      {"format", [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v == "csv")
           c.format = ReportFormat::csv;
         else if (v == "jsonl")
           c.format = ReportFormat::jsonl;
         else
           throw ConfigError(k, "expected csv or jsonl, got '" + v + "'");
       }},
      {"threads", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.threads = v == "auto" ? 0 : to_positive_int(k, v);
       }},
  };
  return table;
}

}  // namespace

std::string to_string(Task t) { return kTaskNames[static_cast<std::size_t>(t)]; }

Task parse_task(const std::string& s) {
  for (std::size_t i = 0; i < kTaskNames.size(); ++i)
    if (kTaskNames[i] == s) return static_cast<Task>(i);
  throw std::invalid_argument("unknown task '" + s + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key, "unknown key");
    it->second(cfg, key, value);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

bool needs_cz_range(const RunConfig& cfg) {
  if (!cfg.task) return false;
  if (*cfg.task == Task::czscan || *cfg.task == Task::lemmas) return true;
  if (*cfg.task != Task::verify) return false;
  for (const auto& s : cfg.subtasks)
    if (s == "czscan" || s == "lemmas") return true;
  return false;
}

void validate(const RunConfig& cfg) {
  if (!cfg.task) throw ConfigError("task", "no task given");
  if (cfg.alpha.empty()) throw ConfigError("alpha", "missing");
  const int d = cfg.dimension == 0 ? static_cast<int>(cfg.alpha.size()) : cfg.dimension;
  if (static_cast<int>(cfg.alpha.size()) != d)
    throw ConfigError("alpha", "has " + std::to_string(cfg.alpha.size()) + " components but dimension is " + std::to_string(d));
  if (d > 8) throw ConfigError("dimension", "at most 8 supported");
  for (double a : cfg.alpha)
    if (!(a > -1.0)) throw ConfigError("alpha", "components must exceed -1");
  if (needs_cz_range(cfg) && *std::min_element(cfg.alpha.begin(), cfg.alpha.end()) < -0.5)
    throw ConfigError("alpha", "czscan and lemmas (also as verify subtasks) require alpha in [-1/2, inf)^d");
  if (!(cfg.box_lo > 0.0)) throw ConfigError("box_lo", "must be positive");
  if (!(cfg.box_hi > cfg.box_lo)) throw ConfigError("box_hi", "must exceed box_lo");
  const bool sampled = *cfg.task != Task::basis;
  if (sampled && !cfg.seed) throw ConfigError("seed", "required for sampled tasks");
  if (*cfg.task == Task::czscan || *cfg.task == Task::kernel) {
    if (cfg.kind != "all" && cfg.kind != "representatives") {
      try {
        (void)KernelKind::parse(cfg.kind, d);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("kind", e.what());
      }
    }
  }
  if (*cfg.task == Task::gfun && cfg.gfun_kind != "all") {
    try {
      (void)GFunctionKind::parse(cfg.gfun_kind, d);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("gfun_kind", e.what());
    }
  }
  if (*cfg.task == Task::verify && cfg.subtasks.empty()) throw ConfigError("subtasks", "empty");
}

}  // namespace lps
