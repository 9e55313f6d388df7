#include "lps/czcheck.hpp"

#include "lps/parallel.hpp"
#include "lps/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lps {

std::string to_string(Estimate e) {
  switch (e) {
    case Estimate::growth: return "gr";
    case Estimate::smooth_x: return "sm1";
    case Estimate::smooth_y: return "sm2";
  }
  return "?";
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

double log_uniform(Rng& rng, double a, double b) { return std::exp(uniform(rng, std::log(a), std::log(b))); }

Eigen::VectorXd random_point(Rng& rng, int d, double lo, double hi) {
  Eigen::VectorXd p(d);
  for (int i = 0; i < d; ++i) p[i] = log_uniform(rng, lo, hi);
  return p;
}

// A point at distance in (0.02, 0.9) * radius from p, inside the open orthant.
Eigen::VectorXd perturb(Rng& rng, const Eigen::VectorXd& p, double radius) {
  const int d = static_cast<int>(p.size());
  double r = uniform(rng, 0.02, 0.9) * radius;
  std::normal_distribution<double> normal;
  for (int attempt = 0;; ++attempt) {
    Eigen::VectorXd dir(d);
    for (int i = 0; i < d; ++i) dir[i] = normal(rng);
    const double n = dir.norm();
    if (n == 0.0) continue;
    const Eigen::VectorXd q = p + (r / n) * dir;
    if ((q.array() > 0.0).all()) return q;
    if (attempt % 16 == 15) r *= 0.5;
  }
}

void check_scan_alpha(const AlphaParam& alpha) {
  if (!alpha.cz_eligible()) throw std::domain_error("kernel scans require alpha in [-1/2, inf)^d");
}

TimeProfile difference(TimeProfile a, const TimeProfile& b) {
  a.values -= b.values;
  return a;
}

}  // namespace

std::vector<ScanSample> sample_scan(int d, const SamplerSpec& spec) {
  if (d < 1) throw std::invalid_argument("sample_scan: dimension must be >= 1");
  if (spec.count < 0) throw std::invalid_argument("sample_scan: count must be >= 0");
  if (!(spec.lo > 0.0 && spec.lo < spec.hi)) throw std::invalid_argument("sample_scan: need 0 < lo < hi");
  Rng rng(spec.seed);
  std::vector<ScanSample> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  while (static_cast<int>(out.size()) < spec.count) {
    const Eigen::VectorXd x = random_point(rng, d, spec.lo, spec.hi);
    const Eigen::VectorXd y = random_point(rng, d, spec.lo, spec.hi);
    const double dist = (x - y).norm();
    if (dist == 0.0) continue;
    const Eigen::VectorXd xm = perturb(rng, x, 0.5 * dist);
    const Eigen::VectorXd ym = perturb(rng, y, 0.5 * dist);
    out.push_back({Point(x), Point(y), Point(xm), Point(ym)});
  }
  return out;
}

Expansion random_expansion(const AlphaParam& alpha, BasisFamily family, int cutoff, int modes, std::uint64_t seed,
                           bool orthogonal_to_ground) {
  std::vector<MultiIndex> pool;
  for (const auto& k : indices_up_to(alpha.dim(), cutoff))
    if (family.admits(k) && !(orthogonal_to_ground && k.order() == 0)) pool.push_back(k);
  if (pool.empty()) throw std::invalid_argument("random_expansion: no admissible index up to the cutoff");
  Rng rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::normal_distribution<double> normal;
  Expansion e(alpha, family);
  const std::size_t take = std::min(pool.size(), static_cast<std::size_t>(std::max(modes, 1)));
  for (std::size_t m = 0; m < take; ++m) e.set(pool[m], normal(rng));
  return e;
}

std::vector<ScanRecord> scan_kernel(const AlphaParam& alpha, const KernelKind& kind,
                                    const std::vector<ScanSample>& samples, const ZetaGrid& grid, int threads) {
  check_scan_alpha(alpha);
  std::vector<ScanRecord> out(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t n) {
    const ScanSample& s = samples[n];
    ScanRecord r;
    r.index = n;
    r.distance = distance(s.x, s.y);
    const double dx = distance(s.x, s.x_moved), dy = distance(s.y, s.y_moved);
    if (!(2.0 * dx < r.distance) || !(2.0 * dy < r.distance))
      throw std::invalid_argument("scan sample " + std::to_string(n) + " violates |x-y| > 2|x-x'|");
    r.ball_measure = mu_ball(alpha, s.x, r.distance);
    const TimeProfile k = kernel_entry(alpha, kind, s.x, s.y, grid);
    r.kernel_norm = bnorm(k);
    r.growth = r.kernel_norm * r.ball_measure;
    const double scale = r.ball_measure * r.distance;
    r.smooth_x = bnorm(difference(k, kernel_entry(alpha, kind, s.x_moved, s.y, grid))) * scale / dx;
    r.smooth_y = bnorm(difference(k, kernel_entry(alpha, kind, s.x, s.y_moved, grid))) * scale / dy;
    out[n] = r;
  });
  return out;
}

std::vector<EstimateReport> scan_growth(const AlphaParam& alpha, const KernelKind& kind,
                                        const std::vector<ScanSample>& samples, const ZetaGrid& grid, int threads) {
  check_scan_alpha(alpha);
  std::vector<EstimateReport> out(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t n) {
    const ScanSample& s = samples[n];
    EstimateReport r;
    r.kind = kind;
    r.estimate = Estimate::growth;
    r.index = n;
    r.x = s.x;
    r.y = s.y;
    r.moved = s.y;
    r.kernel_norm = bnorm(kernel_entry(alpha, kind, s.x, s.y, grid));
    r.ball_measure = mu_ball(alpha, s.x, distance(s.x, s.y));
    r.ratio = r.kernel_norm * r.ball_measure;
    out[n] = r;
  });
  return out;
}

std::vector<EstimateReport> scan_smoothness(const AlphaParam& alpha, const KernelKind& kind, Estimate which,
                                            const std::vector<ScanSample>& samples, const ZetaGrid& grid,
                                            int threads) {
  check_scan_alpha(alpha);
  if (which == Estimate::growth) throw std::invalid_argument("scan_smoothness: pick smooth_x or smooth_y");
  std::vector<EstimateReport> out(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t n) {
    const ScanSample& s = samples[n];
    const bool in_x = which == Estimate::smooth_x;
    const Point& moved = in_x ? s.x_moved : s.y_moved;
    const double dist = distance(s.x, s.y);
    const double shift = in_x ? distance(s.x, moved) : distance(s.y, moved);
    EstimateReport r;
    r.kind = kind;
    r.estimate = which;
    r.index = n;
    r.x = s.x;
    r.y = s.y;
    r.moved = moved;
    r.constraint_ok = dist > 2.0 * shift;
    if (!r.constraint_ok) throw std::invalid_argument("scan sample " + std::to_string(n) + " violates the half-distance constraint");
    const TimeProfile k = kernel_entry(alpha, kind, s.x, s.y, grid);
    const TimeProfile km = in_x ? kernel_entry(alpha, kind, moved, s.y, grid) : kernel_entry(alpha, kind, s.x, moved, grid);
    r.kernel_norm = shift == 0.0 ? 0.0 : bnorm(difference(k, km));
    r.ball_measure = mu_ball(alpha, s.x, dist);
    r.ratio = shift == 0.0 ? 0.0 : r.kernel_norm * r.ball_measure * dist / shift;
    out[n] = r;
  });
  return out;
}

ScanSummary summarize(const std::vector<ScanRecord>& records) {
  ScanSummary s;
  s.count = records.size();
  std::vector<double> growth;
  for (const auto& r : records) {
    if (!std::isfinite(r.growth) || !std::isfinite(r.smooth_x) || !std::isfinite(r.smooth_y)) {
      ++s.nonfinite;
      continue;
    }
    s.max_growth = std::max(s.max_growth, r.growth);
    s.max_smooth_x = std::max(s.max_smooth_x, r.smooth_x);
    s.max_smooth_y = std::max(s.max_smooth_y, r.smooth_y);
    growth.push_back(r.growth);
  }
  if (!growth.empty()) {
    const auto mid = growth.begin() + static_cast<std::ptrdiff_t>(growth.size() / 2);
    std::nth_element(growth.begin(), mid, growth.end());
    s.median_growth = *mid;
  }
  return s;
}

// ---------------------------------------------------------------- lemma suite

namespace {

constexpr double kExactSlack = 1e-12;

// Random s in [-1,1]^d stored as 1 + s, with the endpoints hit on purpose.
Eigen::VectorXd random_one_plus_s(Rng& rng, int d) {
  Eigen::VectorXd ops(d);
  for (int i = 0; i < d; ++i) {
    const double u = uniform(rng, 0.0, 1.0);
    ops[i] = u < 0.1 ? 0.0 : (u < 0.2 ? 2.0 : uniform(rng, 0.0, 2.0));
  }
  return ops;
}

// q_+ and q_- as sums of nonnegative terms.
double q_sum(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& ops, bool plus) {
  double q = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double a = x[i] - y[i];
    q += a * a + 2.0 * x[i] * y[i] * (plus ? ops[i] : 2.0 - ops[i]);
  }
  return q;
}

LemmaResult lemma_obs(int d, long samples, Rng& rng) {
  LemmaResult r{"obs", true, samples};
  for (long n = 0; n < samples; ++n) {
    const Eigen::VectorXd x = random_point(rng, d, 1e-3, 1e2);
    const Eigen::VectorXd y = random_point(rng, d, 1e-3, 1e2);
    const Eigen::VectorXd ops = random_one_plus_s(rng, d);
    bool bad = false;
    for (bool plus : {true, false}) {
      const double q = q_sum(x, y, ops, plus);
      for (int j = 0; j < d; ++j) {
        // x_j + y_j s_j written as (x_j - y_j) + y_j (1 + s_j) to keep the endpoint exact.
        const double l1 = plus ? (x[j] - y[j]) + y[j] * ops[j] : (x[j] + y[j]) - y[j] * ops[j];
        const double l2 = plus ? (y[j] - x[j]) + x[j] * ops[j] : (y[j] + x[j]) - x[j] * ops[j];
        for (double l : {l1, l2}) {
          const double ratio = l * l / q;
          r.worst = std::max(r.worst, ratio);
          if (ratio > 1.0 + kExactSlack) bad = true;
        }
      }
    }
    if (bad) ++r.violations;
  }
  r.worst = std::sqrt(r.worst);
  r.passed = r.violations == 0;
  return r;
}

LemmaResult lemma_oq(long samples, Rng& rng) {
  LemmaResult r{"oq", true, samples};
  double worst_log = -std::numeric_limits<double>::infinity();
  for (long n = 0; n < samples; ++n) {
    const double b = uniform(rng, 0.0, 1.0) < 0.05 ? 0.0 : uniform(rng, 0.0, 8.0);
    const double c = log_uniform(rng, 1.0 / 64.0, 4.0);
    const double a = log_uniform(rng, 1e-3, 1e3);
    const double q = log_uniform(rng, 1e-6, 1e4);
    const double log_c = b == 0.0 ? 0.0 : b * std::log(2.0 * b / (c * std::numbers::e));
    const double lhs = (b == 0.0 ? 0.0 : b * std::log(q)) - c * a * q;
    const double rhs = log_c - (b == 0.0 ? 0.0 : b * std::log(a)) - 0.5 * c * a * q;
    const double gap = lhs - rhs;
    worst_log = std::max(worst_log, gap);
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (gap > kExactSlack * scale) ++r.violations;
  }
  r.worst = std::exp(worst_log);
  r.passed = r.violations == 0;
  return r;
}

LemmaResult lemma_lemat(int d, long samples, Rng& rng) {
  LemmaResult r{"lemat", true, samples};
  for (long n = 0; n < samples; ++n) {
    Eigen::VectorXd x = random_point(rng, d, 0.05, 10.0);
    Eigen::VectorXd y = random_point(rng, d, 0.05, 10.0);
    const bool swap_roles = uniform(rng, 0.0, 1.0) < 0.5;
    if (swap_roles) std::swap(x, y);
    const double dist = (x - y).norm();
    Eigen::VectorXd xp = perturb(rng, x, 0.5 * dist);
    // push some samples right up to the constraint boundary
    if (uniform(rng, 0.0, 1.0) < 0.2) xp = x + (xp - x) * (0.4999 * dist / (xp - x).norm());
    if (!((xp.array() > 0.0).all())) xp = x;
    const double lam = uniform(rng, 0.0, 1.0);
    const Eigen::VectorXd theta = lam * x + (1.0 - lam) * xp;
    const Eigen::VectorXd ops = random_one_plus_s(rng, d);
    bool bad = false;
    for (bool plus : {true, false}) {
      const double q = q_sum(x, y, ops, plus);
      const double qt = q_sum(theta, y, ops, plus);
      const double ratio = std::max(qt / q, q / qt) / 4.0;
      r.worst = std::max(r.worst, ratio);
      if (ratio > 1.0 + kExactSlack) bad = true;
    }
    if (bad) ++r.violations;
  }
  r.passed = r.violations == 0;
  return r;
}

double relative_change(double a, double b) {
  const double m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

LemmaResult finish_fit(std::string name, long samples, double c0, double c1) {
  LemmaResult r{std::move(name), false, samples};
  r.constant = c0;
  r.refined_constant = c1;
  r.relative_change = relative_change(c0, c1);
  r.passed = std::isfinite(c0) && std::isfinite(c1) && c1 > 0.0 && r.relative_change < 0.05;
  return r;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / std::max(1, n - 1));
  return g;
}

// sup_T T^{a-1} int_0^1 zeta^{-a} e^{-T/zeta} dzeta
double fit_lem54(double a, const std::vector<double>& ts, int level) {
  double c = 0.0;
  for (double t : ts) {
    const double v = tanh_sinh([&](double z, double, double) { return std::exp(-a * std::log(z) - t / z); }, 0.0, 1.0, level);
    c = std::max(c, std::pow(t, a - 1.0) * v);
  }
  return c;
}

// sup_q q int_0^1 zeta^{-3} log((1+zeta)/(1-zeta)) e^{-Cq/zeta} dzeta
double fit_uw(double cc, const std::vector<double>& qs, int level) {
  double c = 0.0;
  for (double q : qs) {
    const double v = tanh_sinh(
        [&](double z, double, double gap_hi) {
          return std::exp(-3.0 * std::log(z) - cc * q / z) * (std::log1p(z) - std::log(gap_hi));
        },
        0.0, 1.0, level);
    c = std::max(c, q * v);
  }
  return c;
}

struct Lem4Pair {
  Eigen::VectorXd x, y;
  double dist;
  double ball;
};

// Both forms of the Pi-integral bound for one (delta, kappa) variant.
std::pair<double, double> fit_lem4(const AlphaParam& alpha, const Eigen::VectorXd& delta, const Eigen::VectorXd& kappa,
                                   const std::vector<Lem4Pair>& pairs, int level) {
  const int d = alpha.dim();
  const AlphaParam pi_param(alpha.components() + delta + kappa);
  const double p = d + alpha.sum() + delta.sum();
  double c1 = 0.0, c2 = 0.0;
  for (const auto& pr : pairs) {
    double pref = 1.0;
    for (int i = 0; i < d; ++i) pref *= std::pow(pr.x[i] + pr.y[i], 2.0 * delta[i]);
    double i1 = 0.0, i2 = 0.0;
    // One pass computes both exponents; the second integrand is the first divided by sqrt(q_+).
    i1 = pi_alpha_integrate_adaptive(
        pi_param,
        [&](std::span<const double>, std::span<const double> ops) {
          double q = pr.dist * pr.dist;
          for (int i = 0; i < d; ++i) q += 2.0 * pr.x[i] * pr.y[i] * ops[i];
          return std::pow(q, -p);
        },
        level);
    i2 = pi_alpha_integrate_adaptive(
        pi_param,
        [&](std::span<const double>, std::span<const double> ops) {
          double q = pr.dist * pr.dist;
          for (int i = 0; i < d; ++i) q += 2.0 * pr.x[i] * pr.y[i] * ops[i];
          return std::pow(q, -p - 0.5);
        },
        level);
    c1 = std::max(c1, pref * i1 * pr.ball);
    c2 = std::max(c2, pref * i2 * pr.ball * pr.dist);
  }
  return {c1, c2};
}

std::string variant_label(const char* name, const Eigen::VectorXd& v) {
  if (v.isZero()) return name + std::string("=0");
  return name + std::string(v[0] == 1.0 ? "=e1" : "=e1/2");
}

}  // namespace

std::vector<LemmaResult> lemma_suite(const AlphaParam& alpha, const LemmaSuiteSpec& spec) {
  if (!alpha.cz_eligible()) throw std::domain_error("lemma_suite: alpha must lie in [-1/2, inf)^d");
  if (spec.samples < 1 || spec.fit_points < 2) throw std::invalid_argument("lemma_suite: need samples >= 1 and fit_points >= 2");
  const int d = alpha.dim();
  std::vector<LemmaResult> out;
  Rng rng(spec.seed);
  out.push_back(lemma_obs(d, spec.samples, rng));
  out.push_back(lemma_oq(spec.samples, rng));
  out.push_back(lemma_lemat(d, spec.samples, rng));

  const std::vector<double> ts = log_grid(1e-4, 1e2, spec.fit_points);
  for (double a : {1.5, 2.0, 3.0}) {
    const std::string name = "lem5.4[a=" + std::to_string(a).substr(0, 3) + "]";
    out.push_back(finish_fit(name, spec.fit_points, fit_lem54(a, ts, 6), fit_lem54(a, ts, 7)));
  }
  const std::vector<double> qs = log_grid(1e-4, 1e3, spec.fit_points);
  for (double c : {1.0 / 4.0, 1.0 / 16.0, 1.0 / 64.0}) {
    const std::string name = "uw[C=1/" + std::to_string(static_cast<int>(std::lround(1.0 / c))) + "]";
    out.push_back(finish_fit(name, spec.fit_points, fit_uw(c, qs, 6), fit_uw(c, qs, 7)));
  }

  const int npairs = spec.integral_pairs > 0 ? spec.integral_pairs : (d == 1 ? 400 : 40);
  const int level = d == 1 ? 6 : 4;
  std::vector<Lem4Pair> pairs;
  while (static_cast<int>(pairs.size()) < npairs) {
    Lem4Pair p;
    p.x = random_point(rng, d, 0.05, 10.0);
    p.y = random_point(rng, d, 0.05, 10.0);
    p.dist = (p.x - p.y).norm();
    if (p.dist == 0.0) continue;
    p.ball = mu_ball(alpha, Point(p.x), p.dist);
    pairs.push_back(std::move(p));
  }
  std::vector<Eigen::VectorXd> shifts{Eigen::VectorXd::Zero(d), Eigen::VectorXd::Unit(d, 0),
                                      0.5 * Eigen::VectorXd::Unit(d, 0)};
  for (const auto& delta : shifts) {
    for (const auto& kappa : shifts) {
      const auto [a0, b0] = fit_lem4(alpha, delta, kappa, pairs, level);
      const auto [a1, b1] = fit_lem4(alpha, delta, kappa, pairs, level + 1);
      const std::string tag = "[" + variant_label("delta", delta) + "," + variant_label("kappa", kappa) + "]";
      out.push_back(finish_fit("lem4" + tag, npairs, a0, a1));
      out.push_back(finish_fit("lem4'" + tag, npairs, b0, b1));
    }
  }
  return out;
}

// ---------------------------------------------------------------- identities

double riesz_identity_check(const Expansion& e, int j, const std::vector<double>& ts, const std::vector<Point>& xs) {
  if (!e.family.is_plain()) throw std::invalid_argument("riesz_identity_check: expansion must be in the plain system");
  const Expansion r = riesz_transform(e, j);
  const int d = e.alpha.dim();
  double worst = 0.0;
  for (const Point& x : xs) {
    for (double t : ts) {
      double lhs = 0.0;
      for (const auto& [k, c] : r.coeffs) {
        const double root = std::sqrt(eigenvalue(e.alpha, k.order()));
        lhs += -root * std::exp(-t * root) * c * basis_eval(e.alpha, r.family, k, x);
      }
      double rhs = 0.0;
      for (const auto& [k, c] : e.coeffs) {
        double dl = 1.0;
        for (int i = 0; i < d; ++i)
          dl *= i == j ? ell_1d_derivative(k[i], e.alpha[i], x[i]) + x[i] * ell_1d(k[i], e.alpha[i], x[i])
                       : ell_1d(k[i], e.alpha[i], x[i]);
        rhs -= std::exp(-t * std::sqrt(eigenvalue(e.alpha, k.order()))) * c * dl;
      }
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

CounterexampleProfile counterexample_profile(double alpha, const std::vector<double>& xs, const ZetaGrid& grid) {
  if (!(alpha > -1.0)) throw std::domain_error("counterexample_profile: alpha must exceed -1");
  CounterexampleProfile p;
  p.alpha = alpha;
  const double lambda0 = 2.0 * alpha + 2.0;
  const Eigen::VectorXd decay = (-lambda0 * grid.t().array()).exp().matrix();
  for (double x : xs) {
    if (!(x > 0.0)) throw std::domain_error("counterexample_profile: x must be positive");
    const double l0 = ell_1d(0, alpha, x);
    const double closed = std::abs(2.0 * x - (2.0 * alpha + 1.0) / x) * l0 / std::sqrt(4.0 * alpha + 4.0);
    const double h = 1e-3 * x;
    const double dl = (ell_1d(0, alpha, x - 2 * h) - 8 * ell_1d(0, alpha, x - h) + 8 * ell_1d(0, alpha, x + h) -
                       ell_1d(0, alpha, x + 2 * h)) /
                      (12.0 * h);
    const double star = -dl + (x - (2.0 * alpha + 1.0) / x) * l0;
    const double quad = bnorm(make_profile(grid, MeasureKind::dt, star * decay));
    p.x.push_back(x);
    p.closed.push_back(closed);
    p.quadrature.push_back(quad);
    p.max_deviation = std::max(p.max_deviation, std::abs(closed - quad));
  }
  return p;
}

double chapman_kolmogorov_error(const AlphaParam& alpha, double t, double s, const Point& x, const Point& y,
                                int order) {
  const MuQuadrature q = mu_quadrature(alpha, order);
  const TimeNode nt = TimeNode::from_t(t), ns = TimeNode::from_t(s);
  double acc = 0.0;
  for (std::size_t p = 0; p < q.points.size(); ++p) {
    const double w = q.weights[static_cast<Eigen::Index>(p)];
    if (w == 0.0) continue;
    acc += w * std::exp(log_heat_kernel_closed(alpha, nt, x, q.points[p]) + log_heat_kernel_closed(alpha, ns, q.points[p], y));
  }
  const double exact = heat_kernel_closed(alpha, t + s, x, y);
  return std::abs(acc - exact) / exact;
}

}  // namespace lps
