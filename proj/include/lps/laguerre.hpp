#pragma once

#include "lps/measure.hpp"

#include <Eigen/Dense>

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace lps {

/// k in N^d.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  static MultiIndex zero(int d) { return MultiIndex(std::vector<int>(d, 0)); }
  static MultiIndex unit(int d, int j);

  int dim() const { return static_cast<int>(entries_.size()); }
  int operator[](int i) const { return entries_[i]; }
  int order() const { return order_; }
  const std::vector<int>& entries() const { return entries_; }

  MultiIndex plus(int j, int by = 1) const;

  auto operator<=>(const MultiIndex& other) const { return entries_ <=> other.entries_; }
  bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }

 private:
  std::vector<int> entries_;
  int order_ = 0;
};

std::string to_string(const MultiIndex& k);

/// All k in N^d with |k| <= n, ordered by |k| then lexicographically.
std::vector<MultiIndex> indices_up_to(int d, int n);

/// Which orthonormal system an expansion refers to.
///
/// Coordinates in the shift set S carry the factor x_s l_{k_s-1}^{alpha_s+1}(x_s)
/// instead of l_{k_s}^{alpha_s}(x_s); the member is 0 when some k_s = 0.
/// plain() is the system {l_k^alpha}, differentiated(j) the system
/// {x_j l_{k-e_j}^{alpha+e_j}}. Two-coordinate shifts arise when delta_i acts
/// on the differentiated(j) system, i != j.
class BasisFamily {
 public:
  static BasisFamily plain() { return BasisFamily(0u); }
  static BasisFamily differentiated(int j) { return BasisFamily(1u << j); }
  static BasisFamily from_mask(unsigned mask) { return BasisFamily(mask); }

  unsigned mask() const { return mask_; }
  bool is_plain() const { return mask_ == 0u; }
  bool shifts(int j) const { return (mask_ >> j) & 1u; }
  bool is_differentiated(int j) const { return mask_ == (1u << j); }
  BasisFamily with(int j) const { return BasisFamily(mask_ | (1u << j)); }
  BasisFamily without(int j) const { return BasisFamily(mask_ & ~(1u << j)); }
  /// Whether index k carries a (possibly) nonzero member of this system.
  bool admits(const MultiIndex& k) const;

  bool operator==(const BasisFamily&) const = default;

 private:
  explicit BasisFamily(unsigned mask) : mask_(mask) {}
  unsigned mask_ = 0u;
};

std::string to_string(BasisFamily family);

/// Finite expansion sum_k c_k phi_k in one of the orthonormal systems.
struct Expansion {
  AlphaParam alpha;
  BasisFamily family = BasisFamily::plain();
  std::map<MultiIndex, double> coeffs;

  Expansion() = default;
  Expansion(AlphaParam a, BasisFamily f) : alpha(std::move(a)), family(f) {}

  /// Inserts c at k; throws if k is not admitted by the family and c != 0.
  void set(const MultiIndex& k, double c);
  double coeff(const MultiIndex& k) const;
  double l2_norm() const;
  int max_order() const;
};

/// lambda_n^alpha = 4n + 2|alpha| + 2d.
double eigenvalue(const AlphaParam& alpha, int n);

/// One-dimensional Laguerre function l_k^a(x) = (2 k!/Gamma(k+a+1))^{1/2} L_k^a(x^2) e^{-x^2/2}.
double ell_1d(int k, double a, double x);
/// d/dx l_k^a(x).
double ell_1d_derivative(int k, double a, double x);
/// l_0^a .. l_kmax^a at x.
Eigen::VectorXd ell_1d_all(int kmax, double a, double x);

double ell(const AlphaParam& alpha, const MultiIndex& k, const Point& x);
double basis_eval(const AlphaParam& alpha, BasisFamily family, const MultiIndex& k, const Point& x);

/// Values of every one-dimensional factor needed to evaluate basis members
/// with |k| <= kmax at a fixed point.
class BasisTable {
 public:
  BasisTable(const AlphaParam& alpha, const Point& x, int kmax);
  double value(BasisFamily family, const MultiIndex& k) const;

 private:
  std::vector<Eigen::VectorXd> plain_;    // l_k^{alpha_i}(x_i)
  std::vector<Eigen::VectorXd> shifted_;  // x_i l_{k-1}^{alpha_i+1}(x_i), 0 at k = 0
};

/// Tensor Gauss-Laguerre rule for integrals against dmu_alpha on (0,inf)^d
/// (substitution u = x^2 per coordinate). Exact for h = e^{-|x|^2} p(x^2)
/// with deg p <= 2n-1 per coordinate.
struct MuQuadrature {
  std::vector<Point> points;
  Eigen::VectorXd weights;
};
MuQuadrature mu_quadrature(const AlphaParam& alpha, int order);

/// Coefficients <f, phi_k> for all admitted |k| <= cutoff.
Expansion analyze(const AlphaParam& alpha, BasisFamily family, const std::function<double(const Point&)>& f,
                  int cutoff, int order);

double synthesize(const Expansion& e, const Point& x);

/// delta_j = d/dx_j + x_j acting coefficientwise:
/// delta_j phi_k = -2 sqrt(k_j) phi'_k with phi' in family.with(j).
/// Requires the family not to shift coordinate j (plain, or differentiated(i), i != j).
Expansion delta_apply(const Expansion& e, int j);

/// delta_j^* = -d/dx_j + x_j - (2 alpha_j + 1)/x_j; inverse direction of delta_apply.
/// Requires the family to shift coordinate j.
Expansion delta_star_apply(const Expansion& e, int j);

/// c_k -> lambda_{|k|} c_k on the plain system.
Expansion laguerre_operator_apply(const Expansion& e);

/// R_j = delta_j L^{-1/2}: plain -> differentiated(j), c_k -> -2 sqrt(k_j / lambda_{|k|}) c_k.
Expansion riesz_transform(const Expansion& e, int j);

}  // namespace lps
