#pragma once

#include "lps/quadrature.hpp"

#include <Eigen/Dense>

#include <string>

namespace lps {

/// Which time measure a B-valued kernel or g-function is normed in.
enum class MeasureKind { dt, t_dt };

std::string to_string(MeasureKind m);

/// zeta = tanh t.
double zeta_of_t(double t);
/// t = (1/2) log((1+zeta)/(1-zeta)).
double t_of_zeta(double zeta);

/// Quadrature for integrals over t in (0, inf) after the substitution
/// zeta = tanh t, together with the matrices that realize Poisson
/// subordination on the same t-nodes.
///
/// zeta in (0, 1) is covered by Gauss-Legendre panels graded dyadically toward
/// both ends: [2^{-k-1}, 2^{-k}] for k = 1..levels plus [0, 2^{-levels-1}],
/// and the mirror images in 1 - zeta.
///
/// Subordination uses P_t = int_0^inf k_t(tau) G_tau dtau with
/// k_t(tau) = t/(2 sqrt(pi)) tau^{-3/2} e^{-t^2/(4 tau)}, discretized by the
/// trapezoid rule in log tau, so heat-kernel data sampled once on the tau
/// nodes maps to every t-node by a matrix-vector product.
class ZetaGrid {
 public:
  struct Spec {
    int panel_order = 8;
    int levels = 40;
    double log_step = 0.125;
  };

  ZetaGrid() : ZetaGrid(Spec{}) {}
  explicit ZetaGrid(Spec spec);

  const Spec& spec() const { return spec_; }
  /// Doubles the panel order and halves the subordination step.
  ZetaGrid refined() const;

  Eigen::Index size() const { return t_.size(); }
  const Eigen::VectorXd& zeta() const { return zeta_; }
  const Eigen::VectorXd& one_minus_zeta() const { return one_minus_zeta_; }
  const Eigen::VectorXd& t() const { return t_; }
  /// Weights w_p with sum_p w_p f(t_p) ~ int f dt (resp. int f t dt).
  const Eigen::VectorXd& weights(MeasureKind m) const { return m == MeasureKind::dt ? dt_weights_ : tdt_weights_; }

  const Eigen::VectorXd& tau() const { return tau_; }
  /// (P * g)_p ~ int k_{t_p}(tau) g(tau) dtau for g sampled on tau().
  const Eigen::MatrixXd& subordination() const { return subordination_; }
  /// Same with d/dt k_t(tau) in place of k_t(tau).
  const Eigen::MatrixXd& subordination_dt() const { return subordination_dt_; }

  /// Row of subordination weights for an arbitrary t (used by finite-difference checks).
  Eigen::RowVectorXd subordination_row(double t, bool derivative) const;

 private:
  Spec spec_;
  Eigen::VectorXd zeta_, one_minus_zeta_, t_, dt_weights_, tdt_weights_;
  Eigen::VectorXd tau_;
  Eigen::MatrixXd subordination_, subordination_dt_;
};

/// Samples of a scalar function of t on a zeta grid, with the weights of the
/// chosen time measure (Jacobian of t(zeta) included).
struct TimeProfile {
  MeasureKind measure = MeasureKind::t_dt;
  Eigen::VectorXd zeta;
  Eigen::VectorXd values;
  Eigen::VectorXd weights;

  double squared_norm() const { return weights.dot(values.cwiseAbs2()); }
};

TimeProfile make_profile(const ZetaGrid& grid, MeasureKind measure, Eigen::VectorXd values);

/// Norm in L^2(dt) or L^2(t dt).
double bnorm(const TimeProfile& p);

/// Subordination rule in u for (1/sqrt(pi)) int_0^inf e^{-u} u^{-1/2} F(u) du:
/// trapezoid in s = log u, weights include e^{-u} u^{-1/2} / sqrt(pi) and the
/// Jacobian. The lower end of the s-range is set from t and the smallest
/// eigenvalue of the semigroup so that F(u) = e^{-t^2 lambda/(4u)} is
/// negligible below it.
QuadratureRule subordination_rule(double t, double lambda_min, double step = 0.125);

}  // namespace lps
