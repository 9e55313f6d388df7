#pragma once

#include <Eigen/Dense>

#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace lps {

/// Type multi-index alpha in (-1, inf)^d.
class AlphaParam {
 public:
  AlphaParam() = default;
  explicit AlphaParam(Eigen::VectorXd components);
  AlphaParam(std::initializer_list<double> components);

  int dim() const { return static_cast<int>(components_.size()); }
  double operator[](int i) const { return components_[i]; }
  const Eigen::VectorXd& components() const { return components_; }
  double sum() const { return components_.sum(); }

  /// True when every component is >= -1/2 (the range of the Schlafli
  /// representation and of the standard kernel estimates).
  bool cz_eligible() const { return cz_eligible_; }

  /// alpha + e_j.
  AlphaParam shifted(int j, double by = 1.0) const;

 private:
  Eigen::VectorXd components_;
  bool cz_eligible_ = false;
};

/// A point of the open orthant (0, inf)^d.
class Point {
 public:
  Point() = default;
  explicit Point(Eigen::VectorXd coords);
  Point(std::initializer_list<double> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }
  const Eigen::VectorXd& coords() const { return coords_; }

 private:
  Eigen::VectorXd coords_;
};

double distance(const Point& a, const Point& b);

/// mu_alpha of the box prod (lo_i, hi_i); lo_i may be 0.
double mu_box(const AlphaParam& alpha, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

/// mu_alpha(B(center, r) cap (0,inf)^d). Exact for d = 1.
double mu_ball(const AlphaParam& alpha, const Point& center, double r);

double doubling_ratio(const AlphaParam& alpha, const Point& center, double r);

/// Integral of f against Pi_alpha = prod_i Pi_{alpha_i} on [-1,1]^d using a
/// Gauss-Jacobi rule of the given order per coordinate; coordinates with
/// alpha_i = -1/2 use the two point masses at -1 and 1.
double pi_alpha_integrate(const AlphaParam& alpha, const std::function<double(std::span<const double>)>& f,
                          int order);

/// Same integral by nested tanh-sinh quadrature at the given level; f also
/// receives 1 + s_i for every coordinate (accurate near s_i = -1), which is
/// where q_+ based integrands concentrate.
double pi_alpha_integrate_adaptive(
    const AlphaParam& alpha,
    const std::function<double(std::span<const double> s, std::span<const double> one_plus_s)>& f, int level);

/// Total mass of Pi_a for one coordinate: 1 / (2^a Gamma(a+1)).
double pi_alpha_mass_1d(double a);

}  // namespace lps
