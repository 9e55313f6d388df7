#include "lps/time_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lps {

std::string to_string(MeasureKind m) { return m == MeasureKind::dt ? "dt" : "t_dt"; }

double zeta_of_t(double t) {
  if (!(t > 0.0)) throw std::domain_error("zeta_of_t: t must be positive");
  return std::tanh(t);
}

double t_of_zeta(double zeta) {
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::domain_error("t_of_zeta: zeta must lie in (0,1)");
  return std::atanh(zeta);
}

namespace {

double log_kernel_weight(double t, double tau) {
  // log of t/(2 sqrt(pi)) tau^{-3/2} e^{-t^2/(4 tau)}
  return std::log(t / (2.0 * std::sqrt(std::numbers::pi))) - 1.5 * std::log(tau) - t * t / (4.0 * tau);
}

}  // namespace

ZetaGrid::ZetaGrid(Spec spec) : spec_(spec) {
  if (spec.panel_order < 1 || spec.levels < 1 || !(spec.log_step > 0.0))
    throw std::domain_error("ZetaGrid: invalid grid specification");
  const QuadratureRule gl = gauss_legendre_rule(spec.panel_order);
  const int m = spec.panel_order;
  const int panels_per_side = spec.levels + 1;
  const Eigen::Index n = 2 * panels_per_side * m;
  zeta_.resize(n);
  one_minus_zeta_.resize(n);
  t_.resize(n);
  dt_weights_.resize(n);
  tdt_weights_.resize(n);

  // Panels on (0, 1/2] in the variable v (v = zeta on the lower side, v = 1 - zeta on the upper side).
  std::vector<std::pair<double, double>> panels;
  panels.emplace_back(0.0, std::ldexp(1.0, -(spec.levels + 1)));
  for (int k = spec.levels; k >= 1; --k) panels.emplace_back(std::ldexp(1.0, -(k + 1)), std::ldexp(1.0, -k));

  Eigen::Index p = 0;
  auto push = [&](double z, double w1, double weight) {
    zeta_[p] = z;
    one_minus_zeta_[p] = w1;
    t_[p] = 0.5 * (std::log1p(z) - std::log(w1));
    dt_weights_[p] = weight / (w1 * (1.0 + z));
    tdt_weights_[p] = dt_weights_[p] * t_[p];
    ++p;
  };
  for (const auto& [a, b] : panels) {
    for (int i = 0; i < m; ++i) {
      const double v = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
      push(v, 1.0 - v, 0.5 * (b - a) * gl.weights[i]);
    }
  }
  for (auto it = panels.rbegin(); it != panels.rend(); ++it) {
    const auto& [a, b] = *it;
    for (int i = m - 1; i >= 0; --i) {
      const double v = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
      push(1.0 - v, v, 0.5 * (b - a) * gl.weights[i]);
    }
  }

  const double t_min = t_.minCoeff();
  const double t_max = t_.maxCoeff();
  const double s_lo = 2.0 * std::log(t_min) - 8.0;
  const double s_hi = std::max(2.0 * std::log(t_max) + 3.0, std::log(60.0));
  const Eigen::Index nt = static_cast<Eigen::Index>(std::ceil((s_hi - s_lo) / spec.log_step)) + 1;
  tau_.resize(nt);
  for (Eigen::Index q = 0; q < nt; ++q) tau_[q] = std::exp(s_lo + static_cast<double>(q) * spec.log_step);

  subordination_.resize(n, nt);
  subordination_dt_.resize(n, nt);
  for (Eigen::Index i = 0; i < n; ++i) {
    subordination_.row(i) = subordination_row(t_[i], false);
    subordination_dt_.row(i) = subordination_row(t_[i], true);
  }
}

Eigen::RowVectorXd ZetaGrid::subordination_row(double t, bool derivative) const {
  Eigen::RowVectorXd row(tau_.size());
  for (Eigen::Index q = 0; q < tau_.size(); ++q) {
    const double tau = tau_[q];
    // trapezoid in log tau: dtau = tau ds
    const double w = spec_.log_step * std::exp(log_kernel_weight(t, tau) + std::log(tau));
    row[q] = derivative ? w * (1.0 / t - t / (2.0 * tau)) : w;
  }
  return row;
}

ZetaGrid ZetaGrid::refined() const {
  Spec s = spec_;
  s.panel_order *= 2;
  s.log_step *= 0.5;
  return ZetaGrid(s);
}

TimeProfile make_profile(const ZetaGrid& grid, MeasureKind measure, Eigen::VectorXd values) {
  if (values.size() != grid.size()) throw std::invalid_argument("make_profile: value count does not match grid");
  TimeProfile p;
  p.measure = measure;
  p.zeta = grid.zeta();
  p.values = std::move(values);
  p.weights = grid.weights(measure);
  return p;
}

double bnorm(const TimeProfile& p) { return std::sqrt(std::max(0.0, p.squared_norm())); }

QuadratureRule subordination_rule(double t, double lambda_min, double step) {
  if (!(t > 0.0) || !(lambda_min > 0.0) || !(step > 0.0)) throw std::domain_error("subordination_rule: invalid arguments");
  // Integrand in s: e^{-e^s} e^{s/2} F(e^s) / sqrt(pi). Upper end: e^{-u} ~ e^{-60}.
  // Lower end: F(u) = e^{-t^2 lambda/(4u)} below e^{-60}, or u^{1/2} below e^{-30}.
  const double s_hi = std::log(60.0);
  const double s_lo = std::min(std::log(t * t * lambda_min / 240.0), s_hi - 1.0);
  const double s_floor = -60.0;
  const double lo = std::max(s_lo, s_floor);
  const Eigen::Index n = static_cast<Eigen::Index>(std::ceil((s_hi - lo) / step)) + 1;
  QuadratureRule r;
  r.kind = RuleKind::log_trapezoid;
  r.order = static_cast<int>(n);
  r.parameter = step;
  r.nodes.resize(n);
  r.weights.resize(n);
  r.log_weights.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double s = lo + static_cast<double>(k) * step;
    const double u = std::exp(s);
    r.nodes[k] = u;
    r.log_weights[k] = std::log(step) - u + 0.5 * s - 0.5 * std::log(std::numbers::pi);
    r.weights[k] = std::exp(r.log_weights[k]);
  }
  return r;
}

}  // namespace lps
