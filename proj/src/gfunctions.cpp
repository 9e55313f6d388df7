#include "lps/gfunctions.hpp"

#include <cmath>
#include <regex>
#include <stdexcept>

namespace lps {

namespace {

using Tag = GFunctionKind::Tag;

struct TagInfo {
  Tag tag;
  const char* name;
  int indices;
};

constexpr TagInfo kTags[] = {
    {Tag::gVT, "gVT", 0},       {Tag::gHT, "gHT", 1},         {Tag::gVTmod, "gVTmod", 1},
    {Tag::gHTmod, "gHTmod", 2}, {Tag::gHTmodStar, "gHTmodStar", 1}, {Tag::gVP, "gVP", 0},
    {Tag::gHP, "gHP", 1},       {Tag::gVPmod, "gVPmod", 1},   {Tag::gHPmod, "gHPmod", 2},
    {Tag::gHPmodStar, "gHPmodStar", 1},
};

const TagInfo& info(Tag t) {
  for (const auto& ti : kTags)
    if (ti.tag == t) return ti;
  throw std::logic_error("unknown g-function tag");
}

bool uses_i(Tag t) { return t == Tag::gHT || t == Tag::gHP || t == Tag::gHTmod || t == Tag::gHPmod; }

// Output expansion of the derivative, still without the time factor.
Expansion differentiate(const GFunctionKind& kind, const Expansion& e) {
  if (!(e.family == kind.input_family()))
    throw std::invalid_argument("g-function " + kind.name() + " expects an expansion in system " +
                                to_string(kind.input_family()) + ", got " + to_string(e.family));
  const int d = e.alpha.dim();
  if (uses_i(kind.tag) && (kind.i < 0 || kind.i >= d)) throw std::invalid_argument(kind.name() + ": i out of range");
  if (kind.is_modified() && (kind.j < 0 || kind.j >= d)) throw std::invalid_argument(kind.name() + ": j out of range");
  if (kind.is_vertical()) {
    Expansion out = e;
    for (auto& [k, c] : out.coeffs) {
      const double lambda = eigenvalue(e.alpha, k.order());
      c *= kind.is_poisson() ? -std::sqrt(lambda) : -lambda;
    }
    return out;
  }
  if (kind.tag == Tag::gHTmodStar || kind.tag == Tag::gHPmodStar) return delta_star_apply(e, kind.j);
  return delta_apply(e, kind.i);
}

double exponent(const GFunctionKind& kind, const AlphaParam& alpha, int n) {
  const double lambda = eigenvalue(alpha, n);
  return kind.is_poisson() ? std::sqrt(lambda) : lambda;
}

// A_n(x) = sum_{|k|=n} c_k phi_k(x) for the derivative expansion.
Eigen::VectorXd shell_amplitudes(const Expansion& de, const Point& x) {
  const int nmax = de.max_order();
  Eigen::VectorXd a = Eigen::VectorXd::Zero(nmax + 1);
  if (de.coeffs.empty()) return a;
  const BasisTable table(de.alpha, x, nmax);
  for (const auto& [k, c] : de.coeffs) a[k.order()] += c * table.value(de.family, k);
  return a;
}

int auto_order(const Expansion& e, int order) { return order > 0 ? order : e.max_order() + 3; }

}  // namespace

bool GFunctionKind::is_poisson() const {
  switch (tag) {
    case Tag::gVP:
    case Tag::gHP:
    case Tag::gVPmod:
    case Tag::gHPmod:
    case Tag::gHPmodStar:
      return true;
    default:
      return false;
  }
}

bool GFunctionKind::is_vertical() const {
  return tag == Tag::gVT || tag == Tag::gVP || tag == Tag::gVTmod || tag == Tag::gVPmod;
}

bool GFunctionKind::is_modified() const {
  return tag == Tag::gVTmod || tag == Tag::gVPmod || tag == Tag::gHTmod || tag == Tag::gHPmod ||
         tag == Tag::gHTmodStar || tag == Tag::gHPmodStar;
}

MeasureKind GFunctionKind::measure() const {
  return (tag == Tag::gHT || tag == Tag::gHTmod || tag == Tag::gHTmodStar) ? MeasureKind::dt : MeasureKind::t_dt;
}

BasisFamily GFunctionKind::input_family() const {
  return is_modified() ? BasisFamily::differentiated(j) : BasisFamily::plain();
}

std::string GFunctionKind::name() const {
  std::string s = info(tag).name;
  if (tag == Tag::gHT || tag == Tag::gHP) return s + "(" + std::to_string(i + 1) + ")";
  if (tag == Tag::gHTmod || tag == Tag::gHPmod)
    return s + "(" + std::to_string(j + 1) + "," + std::to_string(i + 1) + ")";
  if (is_modified()) return s + "(" + std::to_string(j + 1) + ")";
  return s;
}

GFunctionKind GFunctionKind::parse(const std::string& name, int d) {
  static const std::regex re(R"(^\s*([A-Za-z]+)\s*(?:\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw std::invalid_argument("unknown g-function kind '" + name + "'");
  for (const auto& ti : kTags) {
    if (m[1] != ti.name) continue;
    std::vector<int> idx;
    if (m[2].matched) idx.push_back(std::stoi(m[2]));
    if (m[3].matched) idx.push_back(std::stoi(m[3]));
    if (idx.empty() && ti.indices == 1) idx.push_back(1);
    if (static_cast<int>(idx.size()) != ti.indices)
      throw std::invalid_argument("wrong number of indices in g-function kind '" + name + "'");
    for (int v : idx)
      if (v < 1 || v > d) throw std::invalid_argument("index out of range 1.." + std::to_string(d) + " in '" + name + "'");
    GFunctionKind k;
    k.tag = ti.tag;
    if (ti.indices == 2) {
      k.j = idx[0] - 1;
      k.i = idx[1] - 1;
      if (k.i == k.j) throw std::invalid_argument(std::string(ti.name) + " requires i != j");
    } else if (ti.indices == 1) {
      (uses_i(ti.tag) ? k.i : k.j) = idx[0] - 1;
    }
    return k;
  }
  throw std::invalid_argument("unknown g-function kind '" + name + "'");
}

std::vector<GFunctionKind> GFunctionKind::all(int d) {
  std::vector<GFunctionKind> out;
  for (const auto& ti : kTags) {
    if (ti.indices == 0) {
      out.push_back({ti.tag, -1, -1});
    } else if (ti.indices == 1) {
      for (int a = 0; a < d; ++a) {
        GFunctionKind k{ti.tag, -1, -1};
        (uses_i(ti.tag) ? k.i : k.j) = a;
        out.push_back(k);
      }
    } else {
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
          if (i != j) out.push_back({ti.tag, i, j});
    }
  }
  return out;
}

double gfun_exact(const GFunctionKind& kind, const Expansion& e, const Point& x) {
  const Expansion de = differentiate(kind, e);
  const Eigen::VectorXd a = shell_amplitudes(de, x);
  const int power = kind.measure() == MeasureKind::t_dt ? 2 : 1;
  double s = 0.0;
  for (Eigen::Index n = 0; n < a.size(); ++n) {
    if (a[n] == 0.0) continue;
    const double vn = exponent(kind, e.alpha, static_cast<int>(n));
    for (Eigen::Index m = 0; m < a.size(); ++m) {
      if (a[m] == 0.0) continue;
      const double den = vn + exponent(kind, e.alpha, static_cast<int>(m));
      s += a[n] * a[m] / (power == 2 ? den * den : den);
    }
  }
  return std::sqrt(std::max(0.0, s));
}

double gfun_quadrature(const GFunctionKind& kind, const Expansion& e, const Point& x, const ZetaGrid& grid) {
  const Expansion de = differentiate(kind, e);
  const Eigen::VectorXd a = shell_amplitudes(de, x);
  Eigen::VectorXd values = Eigen::VectorXd::Zero(grid.size());
  for (Eigen::Index n = 0; n < a.size(); ++n) {
    if (a[n] == 0.0) continue;
    const double v = exponent(kind, e.alpha, static_cast<int>(n));
    values += a[n] * (-v * grid.t().array()).exp().matrix();
  }
  return bnorm(make_profile(grid, kind.measure(), std::move(values)));
}

double gfun_l2_norm(const GFunctionKind& kind, const Expansion& e, int order) {
  const MuQuadrature q = mu_quadrature(e.alpha, auto_order(e, order));
  double s = 0.0;
  for (std::size_t p = 0; p < q.points.size(); ++p) {
    const double g = gfun_exact(kind, e, q.points[p]);
    s += q.weights[static_cast<Eigen::Index>(p)] * g * g;
  }
  return std::sqrt(s);
}

double combined_horizontal_squared_norm(const Expansion& e, bool poisson, int order) {
  const int d = e.alpha.dim();
  std::vector<GFunctionKind> kinds;
  if (e.family.is_plain()) {
    for (int i = 0; i < d; ++i) kinds.push_back({poisson ? Tag::gHP : Tag::gHT, i, -1});
  } else {
    int j = -1;
    for (int c = 0; c < d; ++c)
      if (e.family.shifts(c)) {
        if (j >= 0) throw std::invalid_argument("combined_horizontal_squared_norm: expansion must be plain or differentiated(j)");
        j = c;
      }
    for (int i = 0; i < d; ++i)
      if (i != j) kinds.push_back({poisson ? Tag::gHPmod : Tag::gHTmod, i, j});
    kinds.push_back({poisson ? Tag::gHPmodStar : Tag::gHTmodStar, -1, j});
  }
  double s = 0.0;
  for (const auto& k : kinds) {
    const double g = gfun_l2_norm(k, e, order);
    s += g * g;
  }
  return s;
}

double horizontal_spectral_sum(const Expansion& e, bool poisson) {
  double s = 0.0;
  for (const auto& [k, c] : e.coeffs) {
    const double r = k.order() / eigenvalue(e.alpha, k.order());
    s += (poisson ? r : 2.0 * r) * c * c;
  }
  return s;
}

}  // namespace lps
