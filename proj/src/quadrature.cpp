#include "lps/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lps {

namespace {

// Three-term recurrence of the orthonormal polynomials of a weight:
//   b_{k+1} p_{k+1}(x) = (x - diag_k) p_k(x) - b_k p_{k-1}(x),  p_0 = mu0^{-1/2}.
// offdiag[k] holds b_{k+1}, k = 0..n-1 (the last entry is only used to scale p_n).
struct Recurrence {
  Eigen::VectorXd diag;
  Eigen::VectorXd offdiag;
  double log_mu0 = 0.0;
};

struct NodeEval {
  double newton_step = 0.0;
  double log_christoffel = 0.0;  // log of 1 / sum_{k<n} p_k(x)^2
};

NodeEval evaluate(const Recurrence& rec, double x) {
  const Eigen::Index n = rec.diag.size();
  double p_prev = 0.0, dp_prev = 0.0;
  double p = std::exp(-0.5 * rec.log_mu0), dp = 0.0;
  double sum = p * p;
  double log_scale = 0.0;
  double r = 0.0, dr = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double bk = k > 0 ? rec.offdiag[k - 1] : 0.0;
    double p_next = (x - rec.diag[k]) * p - bk * p_prev;
    double dp_next = p + (x - rec.diag[k]) * dp - bk * dp_prev;
    if (k == n - 1) {
      r = p_next;
      dr = dp_next;
      break;
    }
    p_next /= rec.offdiag[k];
    dp_next /= rec.offdiag[k];
    sum += p_next * p_next;
    p_prev = p;
    dp_prev = dp;
    p = p_next;
    dp = dp_next;
    if (std::abs(p) > 1e150 || std::abs(dp) > 1e150) {
      constexpr double f = 1e-150;
      p *= f;
      dp *= f;
      p_prev *= f;
      dp_prev *= f;
      sum *= f * f;
      log_scale -= std::log(f);
    }
  }
  return {r / dr, -(std::log(sum) + 2.0 * log_scale)};
}

QuadratureRule golub_welsch(const Recurrence& rec, RuleKind kind, int order, double parameter) {
  const Eigen::Index n = rec.diag.size();
  Eigen::VectorXd sub = rec.offdiag.head(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(rec.diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("golub_welsch: eigen decomposition failed");

  QuadratureRule rule;
  rule.kind = kind;
  rule.order = order;
  rule.parameter = parameter;
  rule.nodes = solver.eigenvalues();
  rule.weights.resize(n);
  rule.log_weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double x = rule.nodes[i];
    for (int it = 0; it < 3; ++it) {
      const double step = evaluate(rec, x).newton_step;
      if (!std::isfinite(step)) break;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::abs(x)) break;
    }
    rule.nodes[i] = x;
    rule.log_weights[i] = evaluate(rec, x).log_christoffel;
    rule.weights[i] = std::exp(rule.log_weights[i]);
  }
  return rule;
}

}  // namespace

std::string to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::gauss_laguerre: return "gauss_laguerre";
    case RuleKind::gauss_jacobi: return "gauss_jacobi";
    case RuleKind::gauss_legendre: return "gauss_legendre";
    case RuleKind::zeta_time_grid: return "zeta_time_grid";
    case RuleKind::log_trapezoid: return "log_trapezoid";
  }
  return "unknown";
}

QuadratureRule gauss_laguerre_rule(int n, double a) {
  if (n < 1) throw std::domain_error("gauss_laguerre_rule: order must be >= 1");
  if (!(a > -1.0)) throw std::domain_error("gauss_laguerre_rule: parameter must exceed -1, got " + std::to_string(a));
  Recurrence rec;
  rec.diag.resize(n);
  rec.offdiag.resize(n);
  for (int k = 0; k < n; ++k) {
    rec.diag[k] = 2.0 * k + a + 1.0;
    rec.offdiag[k] = std::sqrt((k + 1.0) * (k + 1.0 + a));
  }
  rec.log_mu0 = std::lgamma(a + 1.0);
  return golub_welsch(rec, RuleKind::gauss_laguerre, n, a);
}

QuadratureRule gauss_jacobi_rule(int n, double a) {
  if (n < 1) throw std::domain_error("gauss_jacobi_rule: order must be >= 1");
  if (!(a > -0.5)) throw std::domain_error("gauss_jacobi_rule: parameter must exceed -1/2, got " + std::to_string(a));
  // Symmetric Jacobi weight (1-s)^b (1+s)^b with b = a - 1/2.
  const double b = a - 0.5;
  Recurrence rec;
  rec.diag = Eigen::VectorXd::Zero(n);
  rec.offdiag.resize(n);
  for (int k = 1; k <= n; ++k) {
    const double b2 = k == 1 ? 1.0 / (3.0 + 2.0 * b)
                             : k * (k + 2.0 * b) / ((2.0 * k + 2.0 * b + 1.0) * (2.0 * k + 2.0 * b - 1.0));
    rec.offdiag[k - 1] = std::sqrt(b2);
  }
  rec.log_mu0 = 0.5 * std::log(std::numbers::pi) + std::lgamma(a + 0.5) - std::lgamma(a + 1.0);
  return golub_welsch(rec, RuleKind::gauss_jacobi, n, a);
}

QuadratureRule gauss_legendre_rule(int n) {
  if (n < 1) throw std::domain_error("gauss_legendre_rule: order must be >= 1");
  Recurrence rec;
  rec.diag = Eigen::VectorXd::Zero(n);
  rec.offdiag.resize(n);
  for (int k = 1; k <= n; ++k) rec.offdiag[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  rec.log_mu0 = std::log(2.0);
  return golub_welsch(rec, RuleKind::gauss_legendre, n, 0.0);
}

TanhSinhNodes tanh_sinh_nodes(double a, double b, int level) {
  const double h = std::ldexp(1.0, -level);
  const double half = 0.5 * (b - a);
  constexpr double half_pi = std::numbers::pi / 2.0;
  TanhSinhNodes r;
  auto push = [&](double x, double ga, double gb, double w) {
    r.x.push_back(x);
    r.gap_lo.push_back(ga);
    r.gap_hi.push_back(gb);
    r.weight.push_back(w * h * half);
  };
  push(a + half, half, half, half_pi);
  for (int k = 1; k <= 100000; ++k) {
    const double s = k * h;
    const double u = half_pi * std::sinh(s);
    const double ch = std::cosh(u);
    const double w = half_pi * std::cosh(s) / (ch * ch);
    const double gap = half * 2.0 / (std::exp(2.0 * u) + 1.0);
    if (w * half < 1e-300 || gap <= 0.0) break;
    push(a + gap, gap, b - a - gap, w);
    push(b - gap, b - a - gap, gap, w);
  }
  return r;
}

}  // namespace lps
