#pragma once

#include "lps/laguerre.hpp"
#include "lps/time_grid.hpp"

#include <string>
#include <vector>

namespace lps {

/// The ten square functions. Indices are 0-based; names are 1-based, with
/// gHTmod(j,i) written in that order.
struct GFunctionKind {
  enum class Tag { gVT, gHT, gVTmod, gHTmod, gHTmodStar, gVP, gHP, gVPmod, gHPmod, gHPmodStar };

  Tag tag = Tag::gVT;
  int i = -1;
  int j = -1;

  bool is_poisson() const;
  bool is_vertical() const;
  bool is_modified() const;
  MeasureKind measure() const;
  /// System the input expansion must be written in.
  BasisFamily input_family() const;
  std::string name() const;

  static GFunctionKind parse(const std::string& name, int d);
  static std::vector<GFunctionKind> all(int d);
};

/// Pointwise value from the closed form of the time integral of a finite
/// exponential sum. Throws std::invalid_argument when the expansion is not in
/// the kind's input system.
double gfun_exact(const GFunctionKind& kind, const Expansion& e, const Point& x);

/// Same value by sampling the time integrand on a zeta grid.
double gfun_quadrature(const GFunctionKind& kind, const Expansion& e, const Point& x, const ZetaGrid& grid);

/// ||g(f)||_{L^2(dmu_alpha)} by Gauss-Laguerre quadrature of gfun_exact^2.
/// order <= 0 picks one that integrates the polynomial part exactly.
double gfun_l2_norm(const GFunctionKind& kind, const Expansion& e, int order = 0);

/// Sum of ||g(f)||^2 over all horizontal kinds of one semigroup: gHT(i) / gHP(i)
/// over i for a plain expansion; gHTmod(j,i), i != j, plus gHTmodStar(j) (and
/// Poisson analogues) for an expansion in the differentiated(j) system.
double combined_horizontal_squared_norm(const Expansion& e, bool poisson, int order = 0);

/// The spectral value of combined_horizontal_squared_norm:
/// heat sum 2|k|/lambda |c_k|^2, Poisson sum |k|/lambda |c_k|^2.
double horizontal_spectral_sum(const Expansion& e, bool poisson);

}  // namespace lps
