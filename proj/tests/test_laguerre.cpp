#include "lps/laguerre.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lps;

TEST(Laguerre, MultiIndexOrdering) {
  const auto idx = indices_up_to(2, 2);
  ASSERT_EQ(idx.size(), 6u);
  EXPECT_EQ(idx[0], MultiIndex::zero(2));
  EXPECT_EQ(idx.back().order(), 2);
  for (std::size_t i = 1; i < idx.size(); ++i) EXPECT_LE(idx[i - 1].order(), idx[i].order());
}

TEST(Laguerre, Eigenvalue) { EXPECT_DOUBLE_EQ(eigenvalue(AlphaParam{0.5, -0.25}, 3), 12.0 + 0.5 + 4.0); }

TEST(Laguerre, OneDimensionalFunctions) {
  // mpmath: sqrt(2 k!/Gamma(k+a+1)) L_k^a(x^2) e^{-x^2/2}
  EXPECT_NEAR(ell_1d(3, 0.5, 1.2), -0.48518413572118285951, 1e-14);
  EXPECT_NEAR(ell_1d(0, -0.5, 0.3), 1.0155101720903454612, 1e-14);
  EXPECT_NEAR(ell_1d_derivative(3, 0.5, 1.2), 0.141059978779263666, 1e-13);
  const auto all = ell_1d_all(5, 0.5, 1.2);
  EXPECT_NEAR(all[3], ell_1d(3, 0.5, 1.2), 1e-15);
}

TEST(Laguerre, FamiliesAdmit) {
  EXPECT_TRUE(BasisFamily::plain().admits(MultiIndex{0, 0}));
  EXPECT_FALSE(BasisFamily::differentiated(1).admits(MultiIndex{3, 0}));
  EXPECT_TRUE(BasisFamily::differentiated(1).admits(MultiIndex{0, 1}));
  EXPECT_EQ(BasisFamily::differentiated(0).with(1).mask(), 3u);
}

class Orthonormality : public ::testing::TestWithParam<std::vector<double>> {};

TEST_P(Orthonormality, GramIsIdentity) {
  const auto comps = GetParam();
  const AlphaParam alpha{Eigen::Map<const Eigen::VectorXd>(comps.data(), static_cast<Eigen::Index>(comps.size()))};
  const int d = alpha.dim();
  const int n = d == 1 ? 10 : 5;
  const auto q = mu_quadrature(alpha, n + 2);
  std::vector<BasisFamily> fams{BasisFamily::plain()};
  for (int j = 0; j < d; ++j) fams.push_back(BasisFamily::differentiated(j));
  for (const auto fam : fams) {
    std::vector<MultiIndex> idx;
    for (const auto& k : indices_up_to(d, n))
      if (fam.admits(k)) idx.push_back(k);
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a; b < idx.size(); ++b) {
        double s = 0.0;
        for (std::size_t p = 0; p < q.points.size(); ++p)
          s += q.weights[static_cast<Eigen::Index>(p)] * basis_eval(alpha, fam, idx[a], q.points[p]) *
               basis_eval(alpha, fam, idx[b], q.points[p]);
        EXPECT_NEAR(s, a == b ? 1.0 : 0.0, 1e-11) << to_string(fam) << ' ' << to_string(idx[a]) << ' ' << to_string(idx[b]);
      }
  }
}

INSTANTIATE_TEST_SUITE_P(Alphas, Orthonormality,
                         ::testing::Values(std::vector<double>{0.0}, std::vector<double>{-0.5}, std::vector<double>{-0.9},
                                           std::vector<double>{2.5}, std::vector<double>{1.3, -0.5}));

TEST(Laguerre, AnalyzeSynthesizeRoundTrip) {
  const AlphaParam alpha{0.4, -0.3};
  Expansion e(alpha, BasisFamily::plain());
  e.set(MultiIndex{0, 0}, 0.7);
  e.set(MultiIndex{2, 1}, -1.1);
  e.set(MultiIndex{0, 4}, 0.25);
  const auto back = analyze(alpha, BasisFamily::plain(), [&](const Point& x) { return synthesize(e, x); }, 5, 12);
  for (const auto& k : indices_up_to(2, 5)) EXPECT_NEAR(back.coeff(k), e.coeff(k), 1e-12) << to_string(k);
  EXPECT_NEAR(e.l2_norm(), std::sqrt(0.49 + 1.21 + 0.0625), 1e-15);
}

TEST(Laguerre, DeltaMatchesDifferentialOperator) {
  const AlphaParam alpha{0.6, 0.0};
  Expansion e(alpha, BasisFamily::plain());
  e.set(MultiIndex{1, 0}, 1.0);
  e.set(MultiIndex{2, 3}, -0.5);
  const Point x{0.8, 1.3};
  const double h = 1e-5;
  for (int j = 0; j < 2; ++j) {
    Eigen::VectorXd p = x.coords(), m = x.coords();
    p[j] += h;
    m[j] -= h;
    const double deriv = (synthesize(e, Point(p)) - synthesize(e, Point(m))) / (2 * h);
    const double expect = deriv + x[j] * synthesize(e, x);
    EXPECT_NEAR(synthesize(delta_apply(e, j), x), expect, 1e-8);
  }
}

TEST(Laguerre, DeltaStarMatchesDifferentialOperator) {
  const AlphaParam alpha{0.6, 0.2};
  Expansion e(alpha, BasisFamily::differentiated(1));
  e.set(MultiIndex{0, 1}, 1.0);
  e.set(MultiIndex{2, 2}, 0.3);
  const Point x{0.9, 0.7};
  const double h = 1e-5;
  Eigen::VectorXd p = x.coords(), m = x.coords();
  p[1] += h;
  m[1] -= h;
  const double deriv = (synthesize(e, Point(p)) - synthesize(e, Point(m))) / (2 * h);
  const double expect = -deriv + x[1] * synthesize(e, x) - (2 * 0.2 + 1) / x[1] * synthesize(e, x);
  EXPECT_NEAR(synthesize(delta_star_apply(e, 1), x), expect, 1e-8);
}

TEST(Laguerre, DeltaStarDeltaIsOperatorShift) {
  // delta_j^* delta_j = L - (2|alpha| + 2d) - ... ; checked through sum_j delta_j^* delta_j = L - lambda_0
  const AlphaParam alpha{0.3, 1.1};
  Expansion e(alpha, BasisFamily::plain());
  e.set(MultiIndex{1, 2}, 0.8);
  e.set(MultiIndex{3, 0}, -0.4);
  const auto le = laguerre_operator_apply(e);
  const Point x{0.6, 1.4};
  double sum = 0.0;
  for (int j = 0; j < 2; ++j) sum += synthesize(delta_star_apply(delta_apply(e, j), j), x);
  EXPECT_NEAR(sum, synthesize(le, x) - eigenvalue(alpha, 0) * synthesize(e, x), 1e-11);
}

TEST(Laguerre, RieszTransformIsContraction) {
  const AlphaParam alpha{0.0, 0.5};
  Expansion e(alpha, BasisFamily::plain());
  e.set(MultiIndex{1, 1}, 1.0);
  e.set(MultiIndex{0, 2}, 2.0);
  const auto r = riesz_transform(e, 0);
  EXPECT_TRUE(r.family.is_differentiated(0));
  EXPECT_LE(r.l2_norm(), e.l2_norm());
  EXPECT_NEAR(r.coeff(MultiIndex{1, 1}), -2.0 * std::sqrt(1.0 / eigenvalue(alpha, 2)), 1e-15);
}

TEST(Laguerre, RejectsWrongFamily) {
  Expansion e(AlphaParam{0.0}, BasisFamily::differentiated(0));
  EXPECT_THROW(e.set(MultiIndex{0}, 1.0), std::invalid_argument);
  EXPECT_THROW(delta_apply(e, 0), std::invalid_argument);
}
