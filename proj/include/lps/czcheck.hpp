#pragma once

#include "lps/kernels.hpp"
#include "lps/laguerre.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lps {

/// Deterministic sampler of points log-uniform in (lo, hi)^d.
struct SamplerSpec {
  int count = 1000;
  std::uint64_t seed = 1;
  double lo = 0.05;
  double hi = 10.0;
};

/// A kernel pair together with the perturbed arguments used by the
/// smoothness estimates: |x - x'| < |x - y|/2 and |y - y'| < |x - y|/2.
struct ScanSample {
  Point x, y;
  Point x_moved, y_moved;
};

std::vector<ScanSample> sample_scan(int d, const SamplerSpec& spec);

/// `modes` distinct admissible indices with |k| <= cutoff and standard normal
/// coefficients; with `orthogonal_to_ground` the index 0 is never drawn.
Expansion random_expansion(const AlphaParam& alpha, BasisFamily family, int cutoff, int modes, std::uint64_t seed,
                           bool orthogonal_to_ground = false);

enum class Estimate { growth, smooth_x, smooth_y };
std::string to_string(Estimate e);

struct EstimateReport {
  KernelKind kind;
  Estimate estimate = Estimate::growth;
  std::size_t index = 0;
  Point x, y;
  /// x' for smooth_x, y' for smooth_y, y otherwise.
  Point moved;
  double kernel_norm = 0.0;
  double ball_measure = 0.0;
  double ratio = 0.0;
  bool constraint_ok = true;
};

/// ratio = ||K(x,y)||_B mu(B(x,|x-y|)).
std::vector<EstimateReport> scan_growth(const AlphaParam& alpha, const KernelKind& kind,
                                        const std::vector<ScanSample>& samples, const ZetaGrid& grid,
                                        int threads = 1);

/// ratio = ||K(x,y) - K(x',y)||_B mu(B(x,|x-y|)) |x-y| / |x-x'| (smooth_x), and the
/// analogue in the second argument (smooth_y). Throws std::invalid_argument if
/// a sample violates the half-distance constraint.
std::vector<EstimateReport> scan_smoothness(const AlphaParam& alpha, const KernelKind& kind, Estimate which,
                                            const std::vector<ScanSample>& samples, const ZetaGrid& grid,
                                            int threads = 1);

/// All three estimates per sample, sharing the evaluation of K(x,y).
struct ScanRecord {
  std::size_t index = 0;
  double distance = 0.0;
  double ball_measure = 0.0;
  double kernel_norm = 0.0;
  double growth = 0.0;
  double smooth_x = 0.0;
  double smooth_y = 0.0;
};

std::vector<ScanRecord> scan_kernel(const AlphaParam& alpha, const KernelKind& kind,
                                    const std::vector<ScanSample>& samples, const ZetaGrid& grid, int threads = 1);

struct ScanSummary {
  std::size_t count = 0;
  std::size_t nonfinite = 0;
  double max_growth = 0.0, max_smooth_x = 0.0, max_smooth_y = 0.0;
  double median_growth = 0.0;
};

ScanSummary summarize(const std::vector<ScanRecord>& records);

struct LemmaSuiteSpec {
  long samples = 100000;
  std::uint64_t seed = 1;
  int fit_points = 40;
  /// Pairs for the Pi-integral bounds; 0 picks a dimension-dependent default.
  int integral_pairs = 0;
};

/// One checked property. Exact inequalities report the worst ratio of left
/// to right side (<= 1 means it holds); quadrature bounds report the fitted
/// constant at two refinement levels.
struct LemmaResult {
  std::string name;
  bool exact = true;
  long samples = 0;
  long violations = 0;
  double worst = 0.0;
  double constant = 0.0;
  double refined_constant = 0.0;
  double relative_change = 0.0;
  bool passed = false;
};

/// Needs alpha in [-1/2, inf)^d.
std::vector<LemmaResult> lemma_suite(const AlphaParam& alpha, const LemmaSuiteSpec& spec);

/// max |d/dt P~_t^{alpha,j}(R_j f)(x) + delta_j P_t^alpha f(x)| over the grids.
double riesz_identity_check(const Expansion& e, int j, const std::vector<double>& ts,
                            const std::vector<Point>& xs);

struct CounterexampleProfile {
  double alpha = 0.0;
  std::vector<double> x;
  std::vector<double> closed;
  std::vector<double> quadrature;
  double max_deviation = 0.0;
};

/// ||delta_1^* T_t l_0^alpha(x)||_{L^2(dt)} in d = 1, by the closed formula
/// |2x - (2 alpha + 1)/x| l_0^alpha(x) / sqrt(4 alpha + 4) and by quadrature
/// on the grid (delta^* applied with finite differences).
CounterexampleProfile counterexample_profile(double alpha, const std::vector<double>& xs, const ZetaGrid& grid);

/// Relative error of int G_t(x,z) G_s(z,y) dmu(z) against G_{t+s}(x,y).
double chapman_kolmogorov_error(const AlphaParam& alpha, double t, double s, const Point& x, const Point& y,
                                int order = 120);

}  // namespace lps
