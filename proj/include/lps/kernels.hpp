#pragma once

#include "lps/measure.hpp"
#include "lps/time_grid.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace lps {

/// Raised when a kernel is requested on the diagonal x = y.
class SingularInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// tanh t and 1 - tanh t kept separately so both ends of (0, inf) stay accurate.
struct TimeNode {
  double t = 0.0;
  double zeta = 0.0;
  double one_minus_zeta = 0.0;

  static TimeNode from_t(double t);
};

/// The ten vector-valued kernels whose standard estimates are scanned.
/// Indices i, j are 0-based; names use 1-based indices, e.g. "hTmod(1,2)"
/// for j = 0, i = 1.
struct KernelKind {
  enum class Tag { dT, dP, hT, hP, dTmod, dPmod, hTmod, hPmod, hTmodStar, hPmodStar };

  Tag tag = Tag::dT;
  int i = -1;
  int j = -1;

  bool is_poisson() const;
  bool is_modified() const;
  /// L^2(dt) for the heat horizontal kinds, L^2(t dt) otherwise.
  MeasureKind measure() const;
  std::string name() const;

  /// Throws std::invalid_argument for unknown names or indices outside 1..d.
  static KernelKind parse(const std::string& name, int d);
  /// Every admissible kind in dimension d (the hTmod/hPmod kinds need d >= 2).
  static std::vector<KernelKind> all(int d);
  /// One instance per tag: i = j = 0 and hTmod/hPmod with j = 0, i = 1.
  static std::vector<KernelKind> representatives(int d);
};

/// G_t^alpha(x, y) from the Bessel closed form, assembled in log space.
double heat_kernel_closed(const AlphaParam& alpha, double t, const Point& x, const Point& y);
double log_heat_kernel_closed(const AlphaParam& alpha, const TimeNode& node, const Point& x, const Point& y);

/// Partial sum of the eigenfunction expansion over |k| <= cutoff.
double heat_kernel_spectral(const AlphaParam& alpha, double t, const Point& x, const Point& y, int cutoff);

/// Integral representation against Pi_alpha; needs alpha in [-1/2, inf)^d.
/// `order` is the Gauss-Jacobi order per coordinate.
double heat_kernel_schlafli(const AlphaParam& alpha, double t, const Point& x, const Point& y, int order = 96);

double q_plus(const Point& x, const Point& y, const Eigen::VectorXd& s);
double q_minus(const Point& x, const Point& y, const Eigen::VectorXd& s);

/// e^{-2t} x_j y_j G_t^{alpha+e_j}(x, y).
double modified_heat_kernel(const AlphaParam& alpha, int j, double t, const Point& x, const Point& y);

/// Spectral partial sum of the modified kernel over |k| <= cutoff.
double modified_heat_kernel_spectral(const AlphaParam& alpha, int j, double t, const Point& x, const Point& y,
                                     int cutoff);

/// Plain or modified(j) semigroup; j < 0 means plain.
struct KernelVariant {
  int j = -1;
  static KernelVariant plain() { return {}; }
  static KernelVariant modified(int j) { return {j}; }
  bool is_modified() const { return j >= 0; }
};

enum class SubordinationMethod { log_trapezoid, gauss_laguerre };

/// (1/sqrt(pi)) int e^{-u} u^{-1/2} K_{t^2/(4u)}(x, y) du.
/// `u_order` is the Gauss-Laguerre order; the log-trapezoid rule ignores it.
/// The Gauss-Laguerre integrand behaves like e^{-t^2 lambda/(4u)} at u = 0, so its
/// error decays slowly in the order (about 1e-6 at 400 for t = 1).
double poisson_kernel(const AlphaParam& alpha, KernelVariant variant, double t, const Point& x, const Point& y,
                      int u_order = 400, SubordinationMethod method = SubordinationMethod::log_trapezoid);

/// sum_{|k| <= cutoff} e^{-t sqrt(lambda)} phi_k(x) phi_k(y) in the plain or modified system.
double poisson_kernel_spectral(const AlphaParam& alpha, KernelVariant variant, double t, const Point& x,
                               const Point& y, int cutoff);

enum class DerivativeMode { analytic, finite_difference };

/// The chosen derivative of the chosen kernel sampled at every node of the grid.
/// Needs alpha in [-1/2, inf)^d and x != y.
TimeProfile kernel_entry(const AlphaParam& alpha, const KernelKind& kind, const Point& x, const Point& y,
                         const ZetaGrid& grid, DerivativeMode mode = DerivativeMode::analytic);

/// Heat-type quantity of a kind (value, d/dt, delta_i or delta_i^*) at one time.
/// For Poisson kinds this is the heat quantity that gets subordinated, with
/// d/dt replaced by the plain value.
double heat_quantity(const AlphaParam& alpha, const KernelKind& kind, const TimeNode& node, const Point& x,
                     const Point& y, DerivativeMode mode = DerivativeMode::analytic);

}  // namespace lps
