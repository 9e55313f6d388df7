// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "lps/czcheck.hpp"
#include "lps/gfunctions.hpp"
#include "lps/kernels.hpp"
#include "lps/parallel.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace lps;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const std::vector<AlphaParam>& isometry_alphas() {
  static const std::vector<AlphaParam> a{AlphaParam{-0.5}, AlphaParam{0.0}, AlphaParam{-0.5, -0.5},
                                         AlphaParam{0.0, 0.0}, AlphaParam{1.3, -0.5}};
  return a;
}

Point random_point(std::mt19937_64& rng, int d, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = u(rng);
  return Point(v);
}

// 1. ||g(f)|| = ||f||/2 for the four vertical g-functions.
Outcome criterion_isometry() {
  const auto t0 = Clock::now();
  constexpr double tol = 1e-6;
  constexpr int expansions = 100;
  double worst = 0.0;
  long checked = 0;
  std::uint64_t seed = 1000;
  for (const auto& alpha : isometry_alphas()) {
    for (const auto& kind : GFunctionKind::all(alpha.dim())) {
      if (!kind.is_vertical()) continue;
      for (int n = 0; n < expansions; ++n) {
        const Expansion e = random_expansion(alpha, kind.input_family(), 8, 1 + n % 10, ++seed);
        worst = std::max(worst, rel(gfun_l2_norm(kind, e), 0.5 * e.l2_norm()));
        ++checked;
      }
    }
  }
  const double wall = seconds_since(t0);
  return {worst <= tol && wall <= 60.0, std::to_string(checked) + " norms, max rel dev " + fmt(worst) + " (tol " +
                                            fmt(tol) + "), " + fmt(wall) + " s (limit 60 s)"};
}

// 2. Combined horizontal norms equal the spectral sums; ratio in (0, 1/2].
Outcome criterion_horizontal() {
  constexpr double tol = 1e-6;
  double worst = 0.0, min_ratio = INFINITY, max_ratio = 0.0;
  long checked = 0;
  std::uint64_t seed = 2000;
  for (const auto& alpha : isometry_alphas()) {
    std::vector<BasisFamily> fams{BasisFamily::plain()};
    for (int j = 0; j < alpha.dim(); ++j) fams.push_back(BasisFamily::differentiated(j));
    for (const auto fam : fams)
      for (bool poisson : {false, true})
        for (int n = 0; n < 100; ++n) {
          const Expansion e = random_expansion(alpha, fam, 8, 1 + n % 10, ++seed, true);
          const double combined = combined_horizontal_squared_norm(e, poisson);
          const double spectral = horizontal_spectral_sum(e, poisson);
          const double ratio = combined / (e.l2_norm() * e.l2_norm());
          worst = std::max(worst, rel(combined, spectral));
          min_ratio = std::min(min_ratio, ratio);
          max_ratio = std::max(max_ratio, ratio);
          ++checked;
        }
  }
  return {worst <= tol && min_ratio > 0.0 && max_ratio <= 0.5,
          std::to_string(checked) + " expansions, max rel dev " + fmt(worst) + " (tol " + fmt(tol) + "), ratio in [" +
              fmt(min_ratio) + ", " + fmt(max_ratio) + "]"};
}

// 3. Closed form, integral representation and eigenfunction sum agree.
Outcome criterion_kernel_triple() {
  const auto t0 = Clock::now();
  constexpr double tol = 1e-7;
  std::mt19937_64 rng(3000);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_real_distribution<double> ua(-0.5, 3.0), ut(0.1, 2.0), coin(0.0, 1.0);
  double worst_s = 0.0, worst_p = 0.0;
  int with_point_mass = 0;
  for (int n = 0; n < 50; ++n) {
    const int d = dim(rng);
    Eigen::VectorXd a(d);
    for (int i = 0; i < d; ++i) a[i] = (n % 2 == 0 && i == 0) || coin(rng) < 0.2 ? -0.5 : ua(rng);
    with_point_mass += (a.array() == -0.5).any();
    const AlphaParam alpha(a);
    const double t = ut(rng);
    const Point x = random_point(rng, d, 0.2, 2.5), y = random_point(rng, d, 0.2, 2.5);
    const double closed = heat_kernel_closed(alpha, t, x, y);
    const int cutoff = static_cast<int>(std::ceil(40.0 / (4.0 * t))) + 4;
    worst_s = std::max(worst_s, rel(heat_kernel_schlafli(alpha, t, x, y), closed));
    worst_p = std::max(worst_p, rel(heat_kernel_spectral(alpha, t, x, y, cutoff), closed));
  }
  const double wall = seconds_since(t0);
  return {worst_s <= tol && worst_p <= tol && with_point_mass > 0 && wall <= 30.0,
          "50 configs (" + std::to_string(with_point_mass) + " with alpha_i = -1/2), max rel dev integral " +
              fmt(worst_s) + ", spectral " + fmt(worst_p) + " (tol " + fmt(tol) + "), " + fmt(wall) +
              " s (limit 30 s)"};
}

// 4. Semigroup law under quadrature.
Outcome criterion_chapman() {
  constexpr double tol = 1e-5;
  std::mt19937_64 rng(4000);
  std::uniform_real_distribution<double> ut(0.2, 1.0), ua(-0.5, 2.0);
  double worst = 0.0;
  for (int n = 0; n < 10; ++n) {
    const int d = n < 6 ? 1 : 2;
    Eigen::VectorXd a(d);
    for (int i = 0; i < d; ++i) a[i] = ua(rng);
    const double t = ut(rng), s = ut(rng);
    const Point x = random_point(rng, d, 0.3, 2.0), y = random_point(rng, d, 0.3, 2.0);
    worst = std::max(worst, chapman_kolmogorov_error(AlphaParam(a), t, s, x, y, d == 1 ? 120 : 60));
  }
  return {worst <= tol, "10 configs (d = 1, 2), max rel error " + fmt(worst) + " (tol " + fmt(tol) + ")"};
}

// 5. Per-mode subordination identity.
Outcome criterion_subordination() {
  constexpr double tol = 1e-10;
  double worst = 0.0;
  for (double t : {0.1, 1.0, 5.0})
    for (int lambda = 1; lambda <= 50; ++lambda) {
      const double v = subordination_rule(t, lambda).integrate([&](double u) { return std::exp(-t * t * lambda / (4 * u)); });
      worst = std::max(worst, std::abs(v - std::exp(-t * std::sqrt(static_cast<double>(lambda)))));
    }
  return {worst <= tol, "150 (t, lambda) pairs, max abs error " + fmt(worst) + " (tol " + fmt(tol) + ")"};
}

// 6. Exact inequalities never violated; fitted constants stable under refinement.
Outcome criterion_lemmas() {
  LemmaSuiteSpec spec;
  spec.samples = 100000;
  spec.seed = 6000;
  bool ok = true;
  long violations = 0;
  double worst_change = 0.0;
  std::string failed;
  for (const AlphaParam& alpha : {AlphaParam{0.0}, AlphaParam{-0.5, 1.2}}) {
    for (const auto& r : lemma_suite(alpha, spec)) {
      if (r.exact) {
        violations += r.violations;
        if (r.samples < spec.samples) ok = false;
      } else {
        worst_change = std::max(worst_change, r.relative_change);
      }
      if (!r.passed) {
        ok = false;
        failed += " " + r.name;
      }
    }
  }
  ok = ok && violations == 0 && worst_change < 0.05;
  return {ok, "violations " + std::to_string(violations) + ", max constant change " + fmt(worst_change) +
                  " (limit 0.05)" + (failed.empty() ? "" : ", failed:" + failed)};
}

// 7. Standard-estimate ratios over all ten kernel tags.
Outcome criterion_czscan() {
  const auto t0 = Clock::now();
  const AlphaParam alpha{-0.5, 0.3};
  const auto samples = sample_scan(2, {1000, 7000, 0.05, 10.0});
  const ZetaGrid grid, fine = grid.refined();
  bool ok = true;
  double worst_change = 0.0, max_ratio = 0.0;
  std::size_t nonfinite = 0;
  const auto kinds = KernelKind::all(2);
  for (const auto& kind : kinds) {
    const auto a = summarize(scan_kernel(alpha, kind, samples, grid, 0));
    const auto b = summarize(scan_kernel(alpha, kind, samples, fine, 0));
    nonfinite += a.nonfinite + b.nonfinite;
    for (auto [x, y] : {std::pair{a.max_growth, b.max_growth}, std::pair{a.max_smooth_x, b.max_smooth_x},
                        std::pair{a.max_smooth_y, b.max_smooth_y}}) {
      worst_change = std::max(worst_change, rel(x, y));
      max_ratio = std::max(max_ratio, x);
    }
  }
  const double wall = seconds_since(t0);
  ok = nonfinite == 0 && worst_change < 0.05 && wall <= 600.0;
  std::set<KernelKind::Tag> tags;
  for (const auto& k : kinds) tags.insert(k.tag);
  ok = ok && tags.size() == 10;
  return {ok, std::to_string(tags.size()) + " tags (" + std::to_string(kinds.size()) + " index instances) x 1000 pairs, nonfinite " + std::to_string(nonfinite) +
                  ", max ratio " + fmt(max_ratio) + ", max refinement change " + fmt(worst_change) + " (limit 0.05), " +
                  fmt(wall) + " s (limit 600 s)"};
}

// 8. d/dt P~(R_j f) = -delta_j P f.
Outcome criterion_riesz() {
  constexpr double tol = 1e-9;
  std::mt19937_64 rng(8000);
  double worst = 0.0;
  int count = 0;
  for (const AlphaParam& alpha : {AlphaParam{0.0}, AlphaParam{-0.5}, AlphaParam{1.3, -0.5}, AlphaParam{0.2, 0.0, 0.7}}) {
    for (int n = 0; n < 10; ++n) {
      const Expansion e = random_expansion(alpha, BasisFamily::plain(), 8, 10, rng());
      std::vector<Point> xs;
      for (int p = 0; p < 5; ++p) xs.push_back(random_point(rng, alpha.dim(), 0.1, 4.0));
      for (int j = 0; j < alpha.dim(); ++j) {
        worst = std::max(worst, riesz_identity_check(e, j, {0.05, 0.3, 1.0, 3.0}, xs));
        ++count;
      }
    }
  }
  return {worst <= tol, std::to_string(count) + " (expansion, j) pairs, max deviation " + fmt(worst) + " (tol " +
                            fmt(tol) + ")"};
}

// 9. Closed formula for ||delta^* T_t l_0|| against its quadrature definition.
Outcome criterion_counterexample() {
  constexpr double tol = 1e-7;
  std::vector<double> xs;
  for (int k = 0; k < 50; ++k) xs.push_back(0.1 + 4.9 * k / 49.0);
  double worst = 0.0;
  for (double a : {0.0, 1.0}) {
    const auto p = counterexample_profile(a, xs, ZetaGrid{});
    for (std::size_t k = 0; k < xs.size(); ++k) worst = std::max(worst, std::abs(p.quadrature[k] - p.closed[k]));
  }
  return {worst <= tol, "alpha in {0, 1}, 50 points in [0.1, 5], max abs dev " + fmt(worst) + " (tol " + fmt(tol) + ")"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// 10. Identical seeded CLI runs give identical bytes.
Outcome criterion_reproducible() {
  const auto dir = std::filesystem::temp_directory_path() / "lps_acceptance";
  std::filesystem::create_directories(dir);
  struct Job {
    std::string task, config, format;
  };
  const std::vector<Job> jobs{
      {"czscan", "dimension = 2\nalpha = -0.5, 0.4\nsamples = 60\nkind = representatives\n", "csv"},
      {"gfun", "dimension = 2\nalpha = 1.3, -0.5\nsamples = 20\n", "jsonl"},
      {"kernel", "dimension = 1\nalpha = 0.25\nsamples = 30\nkind = hP(1)\n", "csv"},
  };
  bool ok = true;
  std::size_t bytes = 0;
  for (const auto& job : jobs) {
    const auto cfg = dir / (job.task + ".cfg");
    std::ofstream(cfg) << job.config;
    std::string runs[2];
    for (int r = 0; r < 2; ++r) {
      const auto out = dir / (job.task + std::to_string(r) + "." + job.format);
      const std::string cmd = std::string(LPS_CLI_PATH) + " " + job.task + " --config " + cfg.string() +
                              " --seed 10 --no-timestamp --format " + job.format + " --threads " +
                              (r == 0 ? "1" : "auto") + " --out " + out.string() + " >/dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) ok = false;
      runs[r] = slurp(out);
    }
    ok = ok && !runs[0].empty() && runs[0] == runs[1];
    bytes += runs[0].size();
  }
  std::filesystem::remove_all(dir);
  return {ok, "3 tasks run twice (1 thread vs auto), " + std::to_string(bytes) + " bytes compared"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"isometry of vertical g-functions", criterion_isometry},
      {"horizontal spectral equivalence", criterion_horizontal},
      {"heat kernel triple agreement", criterion_kernel_triple},
      {"Chapman-Kolmogorov", criterion_chapman},
      {"subordination identity", criterion_subordination},
      {"lemma suite", criterion_lemmas},
      {"CZ scans", criterion_czscan},
      {"Riesz identity", criterion_riesz},
      {"counterexample formula", criterion_counterexample},
      {"reproducibility", criterion_reproducible},
  };
  int failures = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Outcome o;
    try {
      o = criteria[n].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.passed;
    std::cout << "criterion " << n + 1 << " [" << (o.passed ? "PASS" : "FAIL") << "] " << criteria[n].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
