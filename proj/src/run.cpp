#include "lps/run.hpp"

#include "lps/czcheck.hpp"
#include "lps/gfunctions.hpp"
#include "lps/kernels.hpp"
#include "lps/laguerre.hpp"
#include "lps/parallel.hpp"
#include "lps/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

namespace lps {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (n + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::string point_string(const Point& p) {
  std::string s;
  for (int i = 0; i < p.dim(); ++i) s += (i ? ";" : "") + format_double(p[i]);
  return s;
}

double rel_dev(double value, double reference, double floor = 1e-300) {
  return std::abs(value - reference) / std::max(std::abs(reference), floor);
}

/// Collects rows, tracks the worst record and the pass/fail state.
class Sink {
 public:
  Sink(ReportWriter& w, std::vector<std::string> columns) : writer_(w), columns_(std::move(columns)) {}

  void emit(const std::vector<Cell>& cells, bool ok, double score) {
    writer_.row(cells);
    if (!ok) passed_ = false;
    // failing rows always outrank passing ones
    const double key = ok ? score : score + 1e300;
    if (!has_worst_ || key > worst_key_) {
      has_worst_ = true;
      worst_key_ = key;
      std::ostringstream os;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        os << (i ? " " : "") << columns_[i] << '=';
        std::visit([&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>)
            os << format_double(v);
          else if constexpr (std::is_same_v<T, bool>)
            os << (v ? "true" : "false");
          else
            os << v;
        }, cells[i]);
      }
      worst_ = os.str();
    }
  }
  void fail() { passed_ = false; }
  bool passed() const { return passed_; }
  const std::string& worst() const { return worst_; }
  std::size_t rows() const { return writer_.rows(); }

  std::string headline_name = "max_deviation";
  double headline = 0.0;
  std::vector<std::string> notes;

 private:
  ReportWriter& writer_;
  std::vector<std::string> columns_;
  bool passed_ = true;
  bool has_worst_ = false;
  double worst_key_ = -std::numeric_limits<double>::infinity();
  std::string worst_;
};

ZetaGrid make_grid(const RunConfig& cfg) { return ZetaGrid({cfg.zeta_order, cfg.zeta_levels, cfg.log_step}); }

SamplerSpec sampler(const RunConfig& cfg, int count) { return {count, *cfg.seed, cfg.box_lo, cfg.box_hi}; }

std::vector<KernelKind> kernel_kinds(const RunConfig& cfg, int d) {
  if (cfg.kind == "all") return KernelKind::all(d);
  if (cfg.kind == "representatives") return KernelKind::representatives(d);
  return {KernelKind::parse(cfg.kind, d)};
}

// ---------------------------------------------------------------- basis

const std::vector<std::string> kBasisColumns = {"family", "index", "norm_sq", "max_offdiag", "deviation", "tolerance", "passed"};

void run_basis(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  constexpr double tol = 1e-10;
  const int d = alpha.dim();
  std::vector<BasisFamily> families{BasisFamily::plain()};
  for (int j = 0; j < d; ++j) families.push_back(BasisFamily::differentiated(j));
  const MuQuadrature q = mu_quadrature(alpha, cfg.quadrature_order > 0 ? cfg.quadrature_order : cfg.cutoff + 2);
  for (const BasisFamily fam : families) {
    std::vector<MultiIndex> idx;
    for (const auto& k : indices_up_to(d, cfg.cutoff))
      if (fam.admits(k)) idx.push_back(k);
    Eigen::MatrixXd phi(static_cast<Eigen::Index>(q.points.size()), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t p = 0; p < q.points.size(); ++p) {
      const BasisTable table(alpha, q.points[p], cfg.cutoff);
      for (std::size_t m = 0; m < idx.size(); ++m)
        phi(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(m)) = table.value(fam, idx[m]);
    }
    const Eigen::MatrixXd gram = phi.transpose() * q.weights.asDiagonal() * phi;
    for (Eigen::Index m = 0; m < gram.rows(); ++m) {
      double off = 0.0;
      for (Eigen::Index n = 0; n < gram.cols(); ++n)
        if (n != m) off = std::max(off, std::abs(gram(m, n)));
      const double dev = std::max(std::abs(gram(m, m) - 1.0), off);
      sink.headline = std::max(sink.headline, dev);
      sink.emit({to_string(fam), to_string(idx[static_cast<std::size_t>(m)]), gram(m, m), off, dev, tol, dev <= tol}, dev <= tol,
                dev / tol);
    }
  }
}

// ---------------------------------------------------------------- kernel

const std::vector<std::string> kKernelColumns = {"index", "t", "x", "y", "closed", "schlafli", "spectral",
                                                 "dev_schlafli", "dev_spectral", "spectral_converged",
                                                 "entry_kind", "entry_norm", "passed"};

void run_kernel(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  constexpr double tol = 1e-7;
  const int d = alpha.dim();
  const auto samples = sample_scan(d, sampler(cfg, cfg.samples));
  std::optional<KernelKind> entry_kind;
  if (cfg.kind != "all" && cfg.kind != "representatives") entry_kind = KernelKind::parse(cfg.kind, d);
  const bool eligible = alpha.cz_eligible();
  std::optional<ZetaGrid> grid;
  if (entry_kind && eligible) grid.emplace(make_grid(cfg));

  struct Row {
    double closed, schlafli, spectral, spectral_more, entry;
  };
  const std::size_t nt = cfg.times.size();
  std::vector<Row> rows(samples.size() * nt);
  parallel_for(samples.size(), cfg.threads, [&](std::size_t n) {
    const auto& s = samples[n];
    double entry = std::numeric_limits<double>::quiet_NaN();
    if (grid) entry = bnorm(kernel_entry(alpha, *entry_kind, s.x, s.y, *grid));
    for (std::size_t k = 0; k < nt; ++k) {
      const double t = cfg.times[k];
      Row r;
      r.closed = heat_kernel_closed(alpha, t, s.x, s.y);
      r.schlafli = eligible ? heat_kernel_schlafli(alpha, t, s.x, s.y, cfg.jacobi_order) : std::numeric_limits<double>::quiet_NaN();
      r.spectral = heat_kernel_spectral(alpha, t, s.x, s.y, cfg.cutoff);
      r.spectral_more = heat_kernel_spectral(alpha, t, s.x, s.y, cfg.cutoff + 4);
      r.entry = entry;
      rows[n * nt + k] = r;
    }
  });
  for (std::size_t n = 0; n < samples.size(); ++n) {
    for (std::size_t k = 0; k < nt; ++k) {
      const Row& r = rows[n * nt + k];
      const double t = cfg.times[k];
      const double dev_s = eligible ? rel_dev(r.schlafli, r.closed) : std::numeric_limits<double>::quiet_NaN();
      const double dev_p = rel_dev(r.spectral, r.closed);
      // the truncated series is only compared once four more shells no longer move it
      const bool converged = rel_dev(r.spectral, r.spectral_more) <= 1e-10;
      bool ok = !eligible || dev_s <= tol;
      if (converged) ok = ok && dev_p <= tol;
      double score = eligible ? dev_s / tol : 0.0;
      if (converged) score = std::max(score, dev_p / tol);
      sink.headline = std::max(sink.headline, eligible ? dev_s : 0.0);
      sink.emit({static_cast<std::int64_t>(n), t, point_string(samples[n].x), point_string(samples[n].y), r.closed,
                 r.schlafli, r.spectral, dev_s, dev_p, converged, entry_kind ? entry_kind->name() : std::string(),
                 r.entry, ok},
                ok, score);
    }
  }
  sink.headline_name = "max_dev_schlafli";
}

// ---------------------------------------------------------------- gfun

const std::vector<std::string> kGfunColumns = {"index", "kind", "x", "norm_f", "exact", "quadrature", "deviation", "tolerance", "passed"};

void run_gfun(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  constexpr double tol = 1e-7;
  const int d = alpha.dim();
  const std::vector<GFunctionKind> kinds =
      cfg.gfun_kind == "all" ? GFunctionKind::all(d) : std::vector<GFunctionKind>{GFunctionKind::parse(cfg.gfun_kind, d)};
  const auto samples = sample_scan(d, sampler(cfg, cfg.samples));
  const ZetaGrid grid = make_grid(cfg);
  struct Row {
    double norm, exact, quad;
  };
  std::vector<Row> rows(samples.size() * kinds.size());
  parallel_for(samples.size(), cfg.threads, [&](std::size_t n) {
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const Expansion e = random_expansion(alpha, kinds[k].input_family(), cfg.cutoff, 10, derive_seed(*cfg.seed, n * 64 + k));
      rows[n * kinds.size() + k] = {e.l2_norm(), gfun_exact(kinds[k], e, samples[n].x), gfun_quadrature(kinds[k], e, samples[n].x, grid)};
    }
  });
  for (std::size_t n = 0; n < samples.size(); ++n) {
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const Row& r = rows[n * kinds.size() + k];
      const double dev = rel_dev(r.quad, r.exact, 1e-12 * r.norm);
      sink.headline = std::max(sink.headline, dev);
      sink.emit({static_cast<std::int64_t>(n), kinds[k].name(), point_string(samples[n].x), r.norm, r.exact, r.quad, dev, tol,
                 dev <= tol},
                dev <= tol, dev / tol);
    }
  }
}

// ---------------------------------------------------------------- czscan

const std::vector<std::string> kScanColumns = {"kind",   "index",  "x",        "y",        "distance", "ball_measure",
                                               "kernel_norm", "growth", "smooth_x", "smooth_y", "finite"};

void run_czscan(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  const int d = alpha.dim();
  const auto samples = sample_scan(d, sampler(cfg, cfg.samples));
  const ZetaGrid grid = make_grid(cfg);
  std::optional<ZetaGrid> fine;
  if (cfg.refine_check) fine.emplace(grid.refined());
  double worst_change = 0.0;
  for (const KernelKind& kind : kernel_kinds(cfg, d)) {
    const auto recs = scan_kernel(alpha, kind, samples, grid, cfg.threads);
    for (const auto& r : recs) {
      const bool finite = std::isfinite(r.growth) && std::isfinite(r.smooth_x) && std::isfinite(r.smooth_y);
      const double top = std::max({r.growth, r.smooth_x, r.smooth_y});
      sink.headline = std::max(sink.headline, finite ? top : std::numeric_limits<double>::infinity());
      sink.emit({kind.name(), static_cast<std::int64_t>(r.index), point_string(samples[r.index].x),
                 point_string(samples[r.index].y), r.distance, r.ball_measure, r.kernel_norm, r.growth, r.smooth_x,
                 r.smooth_y, finite},
                finite, finite ? 0.0 : 1.0);
    }
    if (fine) {
      const ScanSummary a = summarize(recs);
      const ScanSummary b = summarize(scan_kernel(alpha, kind, samples, *fine, cfg.threads));
      const double change = std::max({rel_dev(a.max_growth, b.max_growth), rel_dev(a.max_smooth_x, b.max_smooth_x),
                                      rel_dev(a.max_smooth_y, b.max_smooth_y)});
      worst_change = std::max(worst_change, change);
      if (!(change < 0.05)) {
        sink.fail();
        sink.notes.push_back(kind.name() + ": max ratio changed by " + format_double(change) + " under grid refinement");
      }
    }
  }
  sink.headline_name = "max_ratio";
  if (fine) sink.notes.push_back("max refinement change " + format_double(worst_change));
}

// ---------------------------------------------------------------- lemmas

const std::vector<std::string> kLemmaColumns = {"lemma", "exact", "samples", "violations", "worst", "constant",
                                                "refined_constant", "relative_change", "passed"};

void run_lemmas(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  LemmaSuiteSpec spec;
  spec.samples = cfg.samples;
  spec.seed = *cfg.seed;
  for (const auto& r : lemma_suite(alpha, spec)) {
    sink.headline = std::max(sink.headline, r.exact ? r.worst : r.relative_change);
    sink.emit({r.name, r.exact, static_cast<std::int64_t>(r.samples), static_cast<std::int64_t>(r.violations), r.worst,
               r.constant, r.refined_constant, r.relative_change, r.passed},
              r.passed, r.exact ? static_cast<double>(r.violations) : r.relative_change / 0.05);
  }
  sink.headline_name = "max_worst";
}

// ---------------------------------------------------------------- verify

const std::vector<std::string> kVerifyColumns = {"suite", "case", "detail", "value", "reference", "deviation", "tolerance", "passed"};

void verify_row(Sink& sink, const std::string& suite, std::int64_t index, const std::string& detail, double value,
                double reference, double dev, double tol) {
  const bool ok = dev <= tol;
  sink.headline = std::max(sink.headline, dev / tol);
  sink.emit({suite, index, detail, value, reference, dev, tol, ok}, ok, dev / tol);
}

void verify_isometry(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  constexpr double tol = 1e-7;
  const int d = alpha.dim();
  std::vector<GFunctionKind> kinds{{GFunctionKind::Tag::gVT}, {GFunctionKind::Tag::gVP}};
  for (int j = 0; j < d; ++j) {
    kinds.push_back({GFunctionKind::Tag::gVTmod, -1, j});
    kinds.push_back({GFunctionKind::Tag::gVPmod, -1, j});
  }
  std::vector<double> vals(static_cast<std::size_t>(cfg.samples) * kinds.size()), refs(vals.size());
  parallel_for(static_cast<std::size_t>(cfg.samples), cfg.threads, [&](std::size_t n) {
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const Expansion e = random_expansion(alpha, kinds[k].input_family(), cfg.cutoff, 6, derive_seed(*cfg.seed, n * 64 + k));
      vals[n * kinds.size() + k] = gfun_l2_norm(kinds[k], e, cfg.quadrature_order);
      refs[n * kinds.size() + k] = 0.5 * e.l2_norm();
    }
  });
  for (std::size_t n = 0; n < static_cast<std::size_t>(cfg.samples); ++n)
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const double v = vals[n * kinds.size() + k], r = refs[n * kinds.size() + k];
      verify_row(sink, "isometry", static_cast<std::int64_t>(n), kinds[k].name(), v, r, rel_dev(v, r), tol);
    }
}

void verify_horizontal(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  constexpr double tol = 1e-6;
  const int d = alpha.dim();
  const int cutoff = std::max(cfg.cutoff, 1);
  struct Case {
    std::string label;
    BasisFamily family;
    bool poisson;
  };
  std::vector<Case> cases{{"heat", BasisFamily::plain(), false}, {"poisson", BasisFamily::plain(), true}};
  for (int j = 0; j < d; ++j) {
    cases.push_back({"heat_mod(" + std::to_string(j + 1) + ")", BasisFamily::differentiated(j), false});
    cases.push_back({"poisson_mod(" + std::to_string(j + 1) + ")", BasisFamily::differentiated(j), true});
  }
  struct Out {
    double combined, spectral, norm_sq;
  };
  std::vector<Out> outs(static_cast<std::size_t>(cfg.samples) * cases.size());
  parallel_for(static_cast<std::size_t>(cfg.samples), cfg.threads, [&](std::size_t n) {
    for (std::size_t c = 0; c < cases.size(); ++c) {
      const Expansion e = random_expansion(alpha, cases[c].family, cutoff, 6, derive_seed(*cfg.seed, n * 64 + c), true);
      outs[n * cases.size() + c] = {combined_horizontal_squared_norm(e, cases[c].poisson, cfg.quadrature_order),
                                    horizontal_spectral_sum(e, cases[c].poisson), e.l2_norm() * e.l2_norm()};
    }
  });
  for (std::size_t n = 0; n < static_cast<std::size_t>(cfg.samples); ++n)
    for (std::size_t c = 0; c < cases.size(); ++c) {
      const Out& o = outs[n * cases.size() + c];
      verify_row(sink, "horizontal", static_cast<std::int64_t>(n), cases[c].label, o.combined, o.spectral,
                 rel_dev(o.combined, o.spectral), tol);
      const double ratio = o.combined / o.norm_sq;
      // ratio must lie in (0, 1/2]; deviation is the distance outside that interval
      const double outside = ratio <= 0.0 ? 1.0 : std::max(0.0, ratio - 0.5);
      verify_row(sink, "horizontal_ratio", static_cast<std::int64_t>(n), cases[c].label, ratio, 0.5, outside, 1e-12);
    }
}

void verify_kernels(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  constexpr double tol = 1e-7;
  const int d = alpha.dim();
  std::mt19937_64 rng(derive_seed(*cfg.seed, 1001));
  std::uniform_real_distribution<double> ut(0.1, 2.0), ux(0.2, 2.5);
  for (int n = 0; n < cfg.samples; ++n) {
    const double t = ut(rng);
    Eigen::VectorXd xv(d), yv(d);
    for (int i = 0; i < d; ++i) xv[i] = ux(rng);
    for (int i = 0; i < d; ++i) yv[i] = ux(rng);
    const Point x(xv), y(yv);
    const double closed = heat_kernel_closed(alpha, t, x, y);
    const int cutoff = std::max(cfg.cutoff, static_cast<int>(std::ceil(36.0 / (4.0 * t))) + 4);
    const double spectral = heat_kernel_spectral(alpha, t, x, y, cutoff);
    const std::string detail = "t=" + format_double(t) + " x=" + point_string(x) + " y=" + point_string(y);
    verify_row(sink, "kernel_spectral", n, detail, closed, spectral, rel_dev(closed, spectral), tol);
    if (alpha.cz_eligible()) {
      const double schl = heat_kernel_schlafli(alpha, t, x, y, cfg.jacobi_order);
      verify_row(sink, "kernel_schlafli", n, detail, schl, closed, rel_dev(schl, closed), tol);
    }
  }
}

void verify_chapman(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  constexpr double tol = 1e-5;
  const int d = alpha.dim();
  std::mt19937_64 rng(derive_seed(*cfg.seed, 2002));
  std::uniform_real_distribution<double> ut(0.2, 1.0), ux(0.3, 2.0);
  const int count = std::min(cfg.samples, 10);
  const int order = cfg.quadrature_order > 0 ? cfg.quadrature_order : (d == 1 ? 120 : 60);
  for (int n = 0; n < count; ++n) {
    const double t = ut(rng), s = ut(rng);
    Eigen::VectorXd xv(d), yv(d);
    for (int i = 0; i < d; ++i) xv[i] = ux(rng);
    for (int i = 0; i < d; ++i) yv[i] = ux(rng);
    const double err = chapman_kolmogorov_error(alpha, t, s, Point(xv), Point(yv), order);
    verify_row(sink, "chapman", n, "t=" + format_double(t) + " s=" + format_double(s), err, 0.0, err, tol);
  }
}

void verify_subordination(const RunConfig&, const AlphaParam&, Sink& sink) {
  constexpr double tol = 1e-10;
  std::int64_t n = 0;
  for (double t : {0.1, 1.0, 5.0}) {
    for (int lambda = 1; lambda <= 50; ++lambda) {
      const double l = lambda;
      const double v = subordination_rule(t, l).integrate([&](double u) { return std::exp(-t * t * l / (4.0 * u)); });
      const double ref = std::exp(-t * std::sqrt(l));
      verify_row(sink, "subordination", n++, "t=" + format_double(t) + " lambda=" + std::to_string(lambda), v, ref,
                 std::abs(v - ref), tol);
    }
  }
}

void verify_riesz(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  constexpr double tol = 1e-9;
  const int d = alpha.dim();
  const std::vector<double> ts{0.05, 0.3, 1.0, 3.0};
  std::mt19937_64 rng(derive_seed(*cfg.seed, 3003));
  std::uniform_real_distribution<double> ux(0.1, 4.0);
  for (int n = 0; n < cfg.samples; ++n) {
    std::vector<Point> xs;
    for (int p = 0; p < 5; ++p) {
      Eigen::VectorXd v(d);
      for (int i = 0; i < d; ++i) v[i] = ux(rng);
      xs.emplace_back(v);
    }
    const Expansion e = random_expansion(alpha, BasisFamily::plain(), std::max(cfg.cutoff, 4), 10, derive_seed(*cfg.seed, 4000 + n));
    for (int j = 0; j < d; ++j) {
      const double dev = riesz_identity_check(e, j, ts, xs);
      verify_row(sink, "riesz", n, "j=" + std::to_string(j + 1), dev, 0.0, dev, tol);
    }
  }
}

void verify_counterexample(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  constexpr double tol = 1e-7;
  std::vector<double> xs;
  for (int k = 0; k < 50; ++k) xs.push_back(0.1 + 4.9 * k / 49.0);
  const auto p = counterexample_profile(alpha[0], xs, make_grid(cfg));
  for (std::size_t k = 0; k < xs.size(); ++k)
    verify_row(sink, "counterexample", static_cast<std::int64_t>(k), "alpha=" + format_double(alpha[0]) + " x=" + format_double(xs[k]),
               p.quadrature[k], p.closed[k], std::abs(p.quadrature[k] - p.closed[k]), tol);
}

void verify_czscan(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  const int d = alpha.dim();
  const auto samples = sample_scan(d, sampler(cfg, cfg.samples));
  const ZetaGrid grid = make_grid(cfg);
  std::optional<ZetaGrid> fine;
  if (cfg.refine_check) fine.emplace(grid.refined());
  std::int64_t n = 0;
  for (const KernelKind& kind : KernelKind::representatives(d)) {
    const auto recs = scan_kernel(alpha, kind, samples, grid, cfg.threads);
    const ScanSummary a = summarize(recs);
    verify_row(sink, "czscan_finite", n, kind.name(), static_cast<double>(a.nonfinite), 0.0, static_cast<double>(a.nonfinite), 0.5);
    if (fine) {
      const ScanSummary b = summarize(scan_kernel(alpha, kind, samples, *fine, cfg.threads));
      const double change = std::max({rel_dev(a.max_growth, b.max_growth), rel_dev(a.max_smooth_x, b.max_smooth_x),
                                      rel_dev(a.max_smooth_y, b.max_smooth_y)});
      verify_row(sink, "czscan_refine", n, kind.name(), std::max({a.max_growth, a.max_smooth_x, a.max_smooth_y}),
                 std::max({b.max_growth, b.max_smooth_x, b.max_smooth_y}), change, 0.05);
    }
    ++n;
  }
}

void verify_lemmas(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  LemmaSuiteSpec spec;
  spec.samples = cfg.samples;
  spec.seed = *cfg.seed;
  std::int64_t n = 0;
  for (const auto& r : lemma_suite(alpha, spec)) {
    if (r.exact)
      verify_row(sink, "lemma", n++, r.name, r.worst, 1.0, static_cast<double>(r.violations), 0.5);
    else
      verify_row(sink, "lemma", n++, r.name, r.constant, r.refined_constant, r.relative_change, 0.05);
  }
}

void run_verify(const RunConfig& cfg, const AlphaParam& alpha, Sink& sink) {
  for (const auto& s : cfg.subtasks) {
    if (s == "isometry") verify_isometry(cfg, alpha, sink);
    else if (s == "horizontal") verify_horizontal(cfg, alpha, sink);
    else if (s == "kernels") verify_kernels(cfg, alpha, sink);
    else if (s == "chapman") verify_chapman(cfg, alpha, sink);
    else if (s == "subordination") verify_subordination(cfg, alpha, sink);
    else if (s == "riesz") verify_riesz(cfg, alpha, sink);
    else if (s == "counterexample") verify_counterexample(cfg, alpha, sink);
    else if (s == "czscan") verify_czscan(cfg, alpha, sink);
    else if (s == "lemmas") verify_lemmas(cfg, alpha, sink);
  }
  sink.headline_name = "max_score";
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& report, std::ostream& log, std::ostream& err, const RunOptions& options) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const AlphaParam alpha(Eigen::Map<const Eigen::VectorXd>(cfg.alpha.data(), static_cast<Eigen::Index>(cfg.alpha.size())));
  const Task task = *cfg.task;
  const std::vector<std::string>* columns = nullptr;
  switch (task) {
    case Task::basis: columns = &kBasisColumns; break;
    case Task::kernel: columns = &kKernelColumns; break;
    case Task::gfun: columns = &kGfunColumns; break;
    case Task::verify: columns = &kVerifyColumns; break;
    case Task::czscan: columns = &kScanColumns; break;
    case Task::lemmas: columns = &kLemmaColumns; break;
  }
  ReportWriter writer(report, cfg.format, to_string(task), *columns, options.timestamp);
  Sink sink(writer, *columns);
  switch (task) {
    case Task::basis: run_basis(cfg, alpha, sink); break;
    case Task::kernel: run_kernel(cfg, alpha, sink); break;
    case Task::gfun: run_gfun(cfg, alpha, sink); break;
    case Task::verify: run_verify(cfg, alpha, sink); break;
    case Task::czscan: run_czscan(cfg, alpha, sink); break;
    case Task::lemmas: run_lemmas(cfg, alpha, sink); break;
  }
  report.flush();
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char wall_buf[32];
  std::snprintf(wall_buf, sizeof wall_buf, "%.2f", wall);
  log << "task=" << to_string(task) << " rows=" << sink.rows() << ' ' << sink.headline_name << '='
      << format_double(sink.headline) << " status=" << (sink.passed() ? "pass" : "FAIL") << " wall=" << wall_buf << "s\n";
  for (const auto& note : sink.notes) log << "  " << note << '\n';
  if (!sink.passed()) {
    err << "assertion failed; worst record: " << sink.worst() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace lps
