#include "lps/czcheck.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lps;

TEST(Sampler, DeterministicAndConstrained) {
  const SamplerSpec spec{200, 42, 0.05, 10.0};
  const auto a = sample_scan(3, spec), b = sample_scan(3, spec);
  ASSERT_EQ(a.size(), 200u);
  for (std::size_t n = 0; n < a.size(); ++n) {
    EXPECT_EQ(a[n].x.coords(), b[n].x.coords());
    EXPECT_EQ(a[n].y_moved.coords(), b[n].y_moved.coords());
    const double r = distance(a[n].x, a[n].y);
    EXPECT_GT(r, 0.0);
    EXPECT_LT(distance(a[n].x, a[n].x_moved), 0.5 * r);
    EXPECT_LT(distance(a[n].y, a[n].y_moved), 0.5 * r);
    for (int i = 0; i < 3; ++i) {
      EXPECT_GT(a[n].x[i], 0.05);
      EXPECT_LT(a[n].x[i], 10.0);
    }
  }
  const auto c = sample_scan(3, {200, 43, 0.05, 10.0});
  EXPECT_NE(a[0].x.coords(), c[0].x.coords());
}

TEST(Sampler, RandomExpansion) {
  const AlphaParam a{0.0, 1.0};
  const auto e = random_expansion(a, BasisFamily::differentiated(1), 5, 10, 3);
  EXPECT_EQ(e.coeffs.size(), 10u);
  for (const auto& [k, c] : e.coeffs) {
    EXPECT_TRUE(e.family.admits(k));
    EXPECT_LE(k.order(), 5);
  }
  const auto g = random_expansion(a, BasisFamily::plain(), 3, 9, 4, true);
  EXPECT_EQ(g.coeff(MultiIndex::zero(2)), 0.0);
}

TEST(Scan, RatiosFiniteAndConsistent) {
  const AlphaParam a{-0.5, 0.5};
  const auto samples = sample_scan(2, {20, 7, 0.05, 10.0});
  const ZetaGrid grid;
  const auto kind = KernelKind::parse("hTmod(1,2)", 2);
  const auto recs = scan_kernel(a, kind, samples, grid, 2);
  const auto growth = scan_growth(a, kind, samples, grid);
  ASSERT_EQ(recs.size(), samples.size());
  for (std::size_t n = 0; n < recs.size(); ++n) {
    EXPECT_TRUE(std::isfinite(recs[n].growth));
    EXPECT_TRUE(std::isfinite(recs[n].smooth_x));
    EXPECT_TRUE(std::isfinite(recs[n].smooth_y));
    EXPECT_NEAR(recs[n].growth, growth[n].ratio, 1e-12 * growth[n].ratio);
    EXPECT_NEAR(recs[n].ball_measure, mu_ball(a, samples[n].x, recs[n].distance), 1e-12 * recs[n].ball_measure);
  }
  const auto s = summarize(recs);
  EXPECT_EQ(s.count, 20u);
  EXPECT_EQ(s.nonfinite, 0u);
  EXPECT_LE(s.median_growth, s.max_growth);
}

TEST(Scan, ThreadCountDoesNotChangeResults) {
  const AlphaParam a{0.0};
  const auto samples = sample_scan(1, {30, 1, 0.05, 10.0});
  const ZetaGrid grid;
  const auto k = KernelKind::parse("dP", 1);
  const auto r1 = scan_kernel(a, k, samples, grid, 1), r4 = scan_kernel(a, k, samples, grid, 4);
  for (std::size_t n = 0; n < r1.size(); ++n) EXPECT_EQ(r1[n].smooth_y, r4[n].smooth_y);
}

TEST(Lemmas, SmallSuitePasses) {
  LemmaSuiteSpec spec;
  spec.samples = 2000;
  spec.seed = 3;
  for (const auto& r : lemma_suite(AlphaParam{0.0}, spec)) {
    EXPECT_TRUE(r.passed) << r.name;
    if (r.exact) EXPECT_EQ(r.violations, 0) << r.name;
  }
}

TEST(Identities, Riesz) {
  const AlphaParam a{0.3, -0.5};
  const auto e = random_expansion(a, BasisFamily::plain(), 5, 10, 8);
  std::vector<Point> xs{Point{0.4, 0.9}, Point{1.7, 0.2}};
  for (int j = 0; j < 2; ++j) EXPECT_LT(riesz_identity_check(e, j, {0.1, 1.0}, xs), 1e-10);
}

TEST(Identities, CounterexampleClosedFormula) {
  const auto p = counterexample_profile(1.0, {0.3, 1.0, 2.5}, ZetaGrid{});
  for (std::size_t k = 0; k < p.x.size(); ++k) {
    const double x = p.x[k];
    const double expect = std::abs(2 * x - 3.0 / x) * ell_1d(0, 1.0, x) / std::sqrt(8.0);
    EXPECT_NEAR(p.closed[k], expect, 1e-15);
    EXPECT_NEAR(p.quadrature[k], expect, 1e-8);
  }
}

TEST(Identities, ChapmanKolmogorov) {
  EXPECT_LT(chapman_kolmogorov_error(AlphaParam{0.5}, 0.3, 0.6, Point{0.7}, Point{1.2}), 1e-8);
}
