#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

namespace lps {

enum class RuleKind { gauss_laguerre, gauss_jacobi, gauss_legendre, zeta_time_grid, log_trapezoid };

std::string to_string(RuleKind kind);

/// Nodes and positive weights of a quadrature rule on its canonical interval:
/// (0, inf) for Gauss-Laguerre with weight u^a e^{-u}, (-1, 1) for Gauss-Jacobi
/// with weight (1-s^2)^{a-1/2} and for Gauss-Legendre, (0, 1) for the zeta grid.
struct QuadratureRule {
  RuleKind kind = RuleKind::gauss_legendre;
  int order = 0;
  double parameter = 0.0;
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  /// log of each weight; kept separately because Laguerre tail weights underflow.
  Eigen::VectorXd log_weights;

  Eigen::Index size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// Rule exact for polynomials of degree 2n-1 against u^a e^{-u} du on (0, inf).
QuadratureRule gauss_laguerre_rule(int n, double a);

/// Rule exact for polynomials of degree 2n-1 against (1-s^2)^{a-1/2} ds on (-1, 1).
/// Requires a > -1/2; the limiting case a = -1/2 is a pair of point masses.
QuadratureRule gauss_jacobi_rule(int n, double a);

QuadratureRule gauss_legendre_rule(int n);

/// Double-exponential (tanh-sinh) quadrature on [a, b].
///
/// The integrand is called as f(x, x - a, b - x) with both gaps computed
/// without cancellation, so endpoint singularities such as (1-s)^{-0.9} can
/// be evaluated near the ends. Step size is 2^{-level}.
template <class F>
double tanh_sinh(F&& f, double a, double b, int level) {
  const double h = std::ldexp(1.0, -level);
  const double half = 0.5 * (b - a);
  constexpr double half_pi = 1.5707963267948966;
  double sum = 0.0;
  {
    const double w = half_pi;
    sum += w * f(a + half, half, half);
  }
  for (int k = 1;; ++k) {
    const double s = k * h;
    const double u = half_pi * std::sinh(s);
    const double ch = std::cosh(u);
    const double w = half_pi * std::cosh(s) / (ch * ch);
    // gap = half * (1 - tanh u) = half * 2 / (exp(2u) + 1)
    const double gap = half * 2.0 / (std::exp(2.0 * u) + 1.0);
    if (w * half < 1e-300 || gap <= 0.0) break;
    sum += w * (f(a + gap, gap, b - a - gap) + f(b - gap, b - a - gap, gap));
    if (k > 100000) break;
  }
  return sum * h * half;
}

/// Materialized tanh-sinh rule on [a, b] (same nodes as tanh_sinh()).
struct TanhSinhNodes {
  std::vector<double> x, gap_lo, gap_hi, weight;
};
TanhSinhNodes tanh_sinh_nodes(double a, double b, int level);

}  // namespace lps
