#include "lps/measure.hpp"
#include "lps/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lps;

TEST(Quadrature, GaussLaguerreMoments) {
  const auto r = gauss_laguerre_rule(10, 0.3);
  EXPECT_NEAR(r.integrate([](double u) { return u * u * u; }), 8.8553433604540349144, 1e-11);
  for (Eigen::Index i = 0; i < r.size(); ++i) EXPECT_GT(r.weights[i], 0.0);
}

TEST(Quadrature, GaussJacobiMoment) {
  // int (1-s^2)^{0.3} s^2 ds = B(3/2, 13/10)
  const auto r = gauss_jacobi_rule(8, 0.8);
  EXPECT_NEAR(r.integrate([](double s) { return s * s; }), 0.47442115499605956853, 1e-13);
}

TEST(Quadrature, GaussLegendreExactness) {
  const auto r = gauss_legendre_rule(5);
  EXPECT_NEAR(r.integrate([](double s) { return std::pow(s, 8) + s; }), 2.0 / 9.0, 1e-14);
}

TEST(Quadrature, TanhSinhEndpointSingularity) {
  // int_0^1 (1-x)^{-0.9} dx = 10, evaluated through the upper gap
  const double v = tanh_sinh([](double, double, double hi) { return std::pow(hi, -0.9); }, 0.0, 1.0, 7);
  EXPECT_NEAR(v, 10.0, 1e-6);
}

TEST(Measure, AlphaEligibility) {
  EXPECT_TRUE((AlphaParam{-0.5, 2.0}).cz_eligible());
  EXPECT_FALSE((AlphaParam{-0.6, 2.0}).cz_eligible());
  EXPECT_THROW((AlphaParam{-1.0}), std::domain_error);
  EXPECT_DOUBLE_EQ((AlphaParam{0.5, 1.0}).shifted(1)[1], 2.0);
}

TEST(Measure, PointMustBeInOrthant) { EXPECT_THROW((Point{1.0, 0.0}), std::domain_error); }

TEST(Measure, BoxMeasure) {
  Eigen::VectorXd lo(1), hi(1);
  lo << 0.5;
  hi << 2.0;
  EXPECT_NEAR(mu_box(AlphaParam{0.25}, lo, hi), 2.1920310216782973256, 1e-13);
}

TEST(Measure, BallIsBoxInOneDimension) {
  const AlphaParam a{0.25};
  Eigen::VectorXd lo(1), hi(1);
  lo << 0.5;
  hi << 2.0;
  EXPECT_NEAR(mu_ball(a, Point{1.25}, 0.75), mu_box(a, lo, hi), 1e-13);
  // clipped at the origin
  lo << 0.0;
  EXPECT_NEAR(mu_ball(a, Point{0.5}, 1.5), mu_box(a, lo, hi), 1e-13);
}

TEST(Measure, BallMonteCarloTwoDimensions) {
  // coarse independent check: midpoint rule over a fine grid
  const AlphaParam a{0.3, -0.4};
  const Point c{0.7, 0.4};
  const double r = 0.6;
  const int n = 1500;
  double sum = 0.0;
  const double h = 2 * r / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = c[0] - r + (i + 0.5) * h, y = c[1] - r + (j + 0.5) * h;
      if (x <= 0 || y <= 0 || std::hypot(x - c[0], y - c[1]) >= r) continue;
      sum += std::pow(x, 2 * 0.3 + 1) * std::pow(y, 2 * -0.4 + 1) * h * h;
    }
  EXPECT_NEAR(mu_ball(a, c, r) / sum, 1.0, 2e-3);
}

TEST(Measure, DoublingRatioBounded) {
  const AlphaParam a{1.0};
  for (double x : {0.01, 0.5, 3.0})
    for (double r : {1e-3, 0.3, 10.0}) {
      const double q = doubling_ratio(a, Point{x}, r);
      EXPECT_GE(q, 1.0);
      EXPECT_LE(q, std::pow(2.0, 2 * 1.0 + 2) + 1e-9);
    }
}

TEST(Measure, PiAlphaMass) {
  EXPECT_NEAR(pi_alpha_mass_1d(0.8), 0.61666221314339509431, 1e-14);
  const AlphaParam a{0.8, -0.5};
  const double m = pi_alpha_integrate(a, [](std::span<const double>) { return 1.0; }, 20);
  EXPECT_NEAR(m, pi_alpha_mass_1d(0.8) * pi_alpha_mass_1d(-0.5), 1e-13);
  const double ma = pi_alpha_integrate_adaptive(a, [](std::span<const double>, std::span<const double>) { return 1.0; }, 6);
  EXPECT_NEAR(ma, m, 1e-10);
}

TEST(Measure, PiAlphaPointMasses) {
  // alpha = -1/2 puts mass 1/(2^{-1/2} Gamma(1/2)) / 2 at each of -1 and 1
  const AlphaParam a{-0.5};
  const double v = pi_alpha_integrate(a, [](std::span<const double> s) { return s[0] > 0 ? 3.0 : 1.0; }, 10);
  EXPECT_NEAR(v, 2.0 * pi_alpha_mass_1d(-0.5), 1e-14);
}
