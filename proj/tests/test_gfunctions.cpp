#include "lps/czcheck.hpp"
#include "lps/gfunctions.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lps;

namespace {

// Independent evaluation from the spectral form: for f = sum c_a phi_a with
// eigenvalues lambda_a, every g-function squared is a double sum
// sum_{a,b} c_a c_b v_a v_b K(lambda_a, lambda_b), where v_a is phi_a(x)
// (vertical) or D phi_a(x) (horizontal), and K is the time integral of the
// product of the two exponential factors in the kind's measure.
double spectral_oracle(const GFunctionKind& kind, const Expansion& e, const Point& x) {
  std::vector<double> lam, val;
  for (const auto& [k, c] : e.coeffs) {
    Expansion single(e.alpha, e.family);
    single.set(k, c);
    double v;
    if (kind.is_vertical()) {
      v = synthesize(single, x);
    } else if (kind.tag == GFunctionKind::Tag::gHTmodStar || kind.tag == GFunctionKind::Tag::gHPmodStar) {
      v = synthesize(delta_star_apply(single, kind.j), x);
    } else {
      v = synthesize(delta_apply(single, kind.i), x);
    }
    lam.push_back(eigenvalue(e.alpha, k.order()));
    val.push_back(v);
  }
  double s = 0.0;
  for (std::size_t a = 0; a < lam.size(); ++a)
    for (std::size_t b = 0; b < lam.size(); ++b) {
      double w;
      const double la = lam[a], lb = lam[b], ra = std::sqrt(la), rb = std::sqrt(lb);
      if (kind.is_vertical())
        w = kind.is_poisson() ? ra * rb / ((ra + rb) * (ra + rb)) : la * lb / ((la + lb) * (la + lb));
      else
        w = kind.is_poisson() ? 1.0 / ((ra + rb) * (ra + rb)) : 1.0 / (la + lb);
      s += val[a] * val[b] * w;
    }
  return std::sqrt(std::max(s, 0.0));
}

}  // namespace

TEST(GFunctionKind, NamesRoundTrip) {
  for (int d : {1, 2, 3})
    for (const auto& k : GFunctionKind::all(d)) EXPECT_EQ(GFunctionKind::parse(k.name(), d).name(), k.name());
  EXPECT_EQ(GFunctionKind::parse("gHT(1)", 1).measure(), MeasureKind::dt);
  EXPECT_EQ(GFunctionKind::parse("gHP(1)", 1).measure(), MeasureKind::t_dt);
  EXPECT_TRUE(GFunctionKind::parse("gVTmod(2)", 2).input_family().is_differentiated(1));
}

TEST(GFunctions, SingleModeVertical) {
  // g_V(l_k) = |l_k| / 2 pointwise for both semigroups
  const AlphaParam a{0.7};
  Expansion e(a, BasisFamily::plain());
  e.set(MultiIndex{3}, 1.0);
  const Point x{1.1};
  for (const char* name : {"gVT", "gVP"})
    EXPECT_NEAR(gfun_exact(GFunctionKind::parse(name, 1), e, x), 0.5 * std::abs(ell_1d(3, 0.7, 1.1)), 1e-14);
}

class GFunctionAllKinds : public ::testing::TestWithParam<std::vector<double>> {};

TEST_P(GFunctionAllKinds, ExactAndQuadratureMatchSpectralOracle) {
  const auto comps = GetParam();
  const AlphaParam alpha{Eigen::Map<const Eigen::VectorXd>(comps.data(), static_cast<Eigen::Index>(comps.size()))};
  const int d = alpha.dim();
  const ZetaGrid grid;
  Eigen::VectorXd xv(d);
  for (int i = 0; i < d; ++i) xv[i] = 0.6 + 0.45 * i;
  const Point x(xv);
  std::uint64_t seed = 5;
  for (const auto& kind : GFunctionKind::all(d)) {
    const Expansion e = random_expansion(alpha, kind.input_family(), 6, 5, ++seed);
    const double oracle = spectral_oracle(kind, e, x);
    EXPECT_NEAR(gfun_exact(kind, e, x), oracle, 1e-12 * std::max(1.0, oracle)) << kind.name();
    EXPECT_NEAR(gfun_quadrature(kind, e, x, grid), oracle, 1e-8 * std::max(1e-3, oracle)) << kind.name();
  }
}

INSTANTIATE_TEST_SUITE_P(Alphas, GFunctionAllKinds,
                         ::testing::Values(std::vector<double>{0.0}, std::vector<double>{-0.5},
                                           std::vector<double>{1.3, -0.5}, std::vector<double>{0.2, 0.0, 0.9}));

TEST(GFunctions, FamilyMismatchThrows) {
  Expansion e(AlphaParam{0.0, 0.0}, BasisFamily::plain());
  e.set(MultiIndex{1, 1}, 1.0);
  EXPECT_THROW(gfun_exact(GFunctionKind::parse("gVTmod(1)", 2), e, Point{1.0, 1.0}), std::invalid_argument);
}

TEST(GFunctions, VerticalIsometry) {
  for (const AlphaParam& a : {AlphaParam{0.0}, AlphaParam{1.3, -0.5}}) {
    for (const auto& kind : GFunctionKind::all(a.dim())) {
      if (!kind.is_vertical()) continue;
      const Expansion e = random_expansion(a, kind.input_family(), 5, 6, 99);
      EXPECT_NEAR(gfun_l2_norm(kind, e) / (0.5 * e.l2_norm()), 1.0, 1e-10) << kind.name();
    }
  }
}

TEST(GFunctions, HorizontalSpectralSum) {
  const AlphaParam a{0.4, -0.5};
  Expansion e(a, BasisFamily::plain());
  e.set(MultiIndex{1, 0}, 1.0);
  e.set(MultiIndex{1, 2}, -0.5);
  // heat: sum 2|k|/lambda c^2
  const double heat = 2.0 * 1 / eigenvalue(a, 1) * 1.0 + 2.0 * 3 / eigenvalue(a, 3) * 0.25;
  EXPECT_NEAR(horizontal_spectral_sum(e, false), heat, 1e-15);
  EXPECT_NEAR(combined_horizontal_squared_norm(e, false), heat, 1e-11);
  EXPECT_NEAR(combined_horizontal_squared_norm(e, true), horizontal_spectral_sum(e, true), 1e-11);
}
