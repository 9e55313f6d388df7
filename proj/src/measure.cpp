#include "lps/measure.hpp"

#include "lps/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lps {

AlphaParam::AlphaParam(Eigen::VectorXd components) : components_(std::move(components)) {
  if (components_.size() < 1) throw std::domain_error("AlphaParam: dimension must be >= 1");
  for (Eigen::Index i = 0; i < components_.size(); ++i) {
    if (!(components_[i] > -1.0))
      throw std::domain_error("AlphaParam: component " + std::to_string(i + 1) + " must exceed -1, got " +
                              std::to_string(components_[i]));
  }
  cz_eligible_ = components_.minCoeff() >= -0.5;
}

AlphaParam::AlphaParam(std::initializer_list<double> components)
    : AlphaParam(Eigen::Map<const Eigen::VectorXd>(components.begin(), static_cast<Eigen::Index>(components.size()))) {}

AlphaParam AlphaParam::shifted(int j, double by) const {
  Eigen::VectorXd c = components_;
  c[j] += by;
  return AlphaParam(std::move(c));
}

Point::Point(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) throw std::domain_error("Point: dimension must be >= 1");
  for (Eigen::Index i = 0; i < coords_.size(); ++i) {
    if (!(coords_[i] > 0.0) || !std::isfinite(coords_[i]))
      throw std::domain_error("Point: coordinates must be positive and finite");
  }
}

Point::Point(std::initializer_list<double> coords)
    : Point(Eigen::Map<const Eigen::VectorXd>(coords.begin(), static_cast<Eigen::Index>(coords.size()))) {}

double distance(const Point& a, const Point& b) { return (a.coords() - b.coords()).norm(); }

namespace {

double interval_measure(double a, double lo, double hi) {
  const double p = 2.0 * a + 2.0;
  return (std::pow(hi, p) - std::pow(lo, p)) / p;
}

// mu restricted to coordinates [first, d) of the ball of radius r around c.
double ball_measure(const Eigen::VectorXd& alpha, const Eigen::VectorXd& c, int first, double r, int level) {
  const int d = static_cast<int>(alpha.size());
  if (r <= 0.0) return 0.0;
  if (first == d - 1) return interval_measure(alpha[first], std::max(0.0, c[first] - r), c[first] + r);

  const double lo = std::max(0.0, c[first] - r);
  const double hi = c[first] + r;
  // The slice ball changes shape where it starts touching a coordinate
  // hyperplane of the remaining coordinates; split there.
  std::vector<double> cuts{lo, hi};
  const int rest = d - first - 1;
  for (int mask = 1; mask < (1 << rest); ++mask) {
    double s = 0.0;
    for (int k = 0; k < rest; ++k)
      if (mask & (1 << k)) s += c[first + 1 + k] * c[first + 1 + k];
    if (s < r * r) {
      const double h = std::sqrt(r * r - s);
      for (double x : {c[first] - h, c[first] + h})
        if (x > lo && x < hi) cuts.push_back(x);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  const double p = 2.0 * alpha[first] + 1.0;
  double total = 0.0;
  for (std::size_t q = 0; q + 1 < cuts.size(); ++q) {
    const double a = cuts[q], b = cuts[q + 1];
    if (b - a <= 0.0) continue;
    total += tanh_sinh(
        [&](double, double ga, double gb) {
          const double x = a + ga;
          // r^2 - (x - c)^2 with the gap to the nearer end of the chord.
          double dx = x - c[first];
          double rho2 = r * r - dx * dx;
          if (b == hi && gb < 0.5 * (b - a)) rho2 = gb * (2.0 * r - gb);
          if (a == c[first] - r && ga < 0.5 * (b - a)) rho2 = ga * (2.0 * r - ga);
          if (rho2 <= 0.0) return 0.0;
          return std::pow(x, p) * ball_measure(alpha, c, first + 1, std::sqrt(rho2), level);
        },
        a, b, level);
  }
  return total;
}

}  // namespace

double mu_box(const AlphaParam& alpha, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  if (lo.size() != alpha.dim() || hi.size() != alpha.dim()) throw std::domain_error("mu_box: dimension mismatch");
  double m = 1.0;
  for (int i = 0; i < alpha.dim(); ++i) {
    if (!(lo[i] >= 0.0) || !(lo[i] < hi[i])) throw std::domain_error("mu_box: malformed box");
    m *= interval_measure(alpha[i], lo[i], hi[i]);
  }
  return m;
}

double mu_ball(const AlphaParam& alpha, const Point& center, double r) {
  if (center.dim() != alpha.dim()) throw std::domain_error("mu_ball: dimension mismatch");
  if (!(r > 0.0)) throw std::domain_error("mu_ball: radius must be positive");
  if (alpha.dim() == 1) return interval_measure(alpha[0], std::max(0.0, center[0] - r), center[0] + r);
  double prev = ball_measure(alpha.components(), center.coords(), 0, r, 4);
  for (int level = 5; level <= 9; ++level) {
    const double cur = ball_measure(alpha.components(), center.coords(), 0, r, level);
    if (std::abs(cur - prev) <= 1e-10 * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

double doubling_ratio(const AlphaParam& alpha, const Point& center, double r) {
  return mu_ball(alpha, center, 2.0 * r) / mu_ball(alpha, center, r);
}

double pi_alpha_mass_1d(double a) { return std::exp(-a * std::numbers::ln2 - std::lgamma(a + 1.0)); }

namespace {

struct Nodes1D {
  std::vector<double> s, one_plus_s, w;
};

template <class Visit>
void tensor_loop(const std::vector<Nodes1D>& per_dim, Visit&& visit) {
  const int d = static_cast<int>(per_dim.size());
  std::vector<double> s(d), ops(d);
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      s[i] = per_dim[i].s[idx[i]];
      ops[i] = per_dim[i].one_plus_s[idx[i]];
      w *= per_dim[i].w[idx[i]];
    }
    visit(std::span<const double>(s), std::span<const double>(ops), w);
    int i = 0;
    while (i < d && ++idx[i] == per_dim[i].s.size()) idx[i++] = 0;
    if (i == d) break;
  }
}

Nodes1D point_masses() {
  const double m = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return {{-1.0, 1.0}, {0.0, 2.0}, {m, m}};
}

void check_pi_range(const AlphaParam& alpha) {
  if (!alpha.cz_eligible()) throw std::domain_error("Pi_alpha requires alpha in [-1/2, inf)^d");
}

}  // namespace

double pi_alpha_integrate(const AlphaParam& alpha, const std::function<double(std::span<const double>)>& f,
                          int order) {
  check_pi_range(alpha);
  std::vector<Nodes1D> per_dim;
  for (int i = 0; i < alpha.dim(); ++i) {
    const double a = alpha[i];
    if (a == -0.5) {
      per_dim.push_back(point_masses());
      continue;
    }
    const QuadratureRule rule = gauss_jacobi_rule(order, a);
    const double norm = 1.0 / (std::sqrt(std::numbers::pi) * std::exp(a * std::numbers::ln2 + std::lgamma(a + 0.5)));
    Nodes1D n;
    for (Eigen::Index k = 0; k < rule.size(); ++k) {
      n.s.push_back(rule.nodes[k]);
      n.one_plus_s.push_back(1.0 + rule.nodes[k]);
      n.w.push_back(rule.weights[k] * norm);
    }
    per_dim.push_back(std::move(n));
  }
  double total = 0.0;
  tensor_loop(per_dim, [&](std::span<const double> s, std::span<const double>, double w) { total += w * f(s); });
  return total;
}

double pi_alpha_integrate_adaptive(
    const AlphaParam& alpha,
    const std::function<double(std::span<const double>, std::span<const double>)>& f, int level) {
  check_pi_range(alpha);
  std::vector<Nodes1D> per_dim;
  for (int i = 0; i < alpha.dim(); ++i) {
    const double a = alpha[i];
    if (a == -0.5) {
      per_dim.push_back(point_masses());
      continue;
    }
    const double norm = 1.0 / (std::sqrt(std::numbers::pi) * std::exp(a * std::numbers::ln2 + std::lgamma(a + 0.5)));
    const TanhSinhNodes ts = tanh_sinh_nodes(-1.0, 1.0, level);
    Nodes1D n;
    for (std::size_t k = 0; k < ts.x.size(); ++k) {
      n.s.push_back(ts.x[k]);
      n.one_plus_s.push_back(ts.gap_lo[k]);
      n.w.push_back(ts.weight[k] * std::pow(ts.gap_lo[k] * ts.gap_hi[k], a - 0.5) * norm);
    }
    per_dim.push_back(std::move(n));
  }
  double total = 0.0;
  tensor_loop(per_dim, [&](std::span<const double> s, std::span<const double> ops, double w) {
    if (w != 0.0) total += w * f(s, ops);
  });
  return total;
}

}  // namespace lps
