#include "lps/laguerre.hpp"

#include "lps/quadrature.hpp"
#include "lps/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lps {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 0) throw std::domain_error("MultiIndex: entries must be nonnegative");
    order_ += e;
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

MultiIndex MultiIndex::unit(int d, int j) {
  std::vector<int> e(d, 0);
  e[j] = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::plus(int j, int by) const {
  std::vector<int> e = entries_;
  e[j] += by;
  return MultiIndex(std::move(e));
}

std::string to_string(const MultiIndex& k) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < k.dim(); ++i) os << (i ? "," : "") << k[i];
  os << ')';
  return os.str();
}

std::vector<MultiIndex> indices_up_to(int d, int n) {
  std::vector<MultiIndex> out;
  std::vector<int> e(d, 0);
  for (int total = 0; total <= n; ++total) {
    // Enumerate compositions of `total` into d parts, lexicographically descending in e[0].
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == d - 1) {
        e[i] = left;
        out.emplace_back(e);
        return;
      }
      for (int v = left; v >= 0; --v) {
        e[i] = v;
        rec(i + 1, left - v);
      }
    };
    rec(0, total);
  }
  return out;
}

bool BasisFamily::admits(const MultiIndex& k) const {
  for (int i = 0; i < k.dim(); ++i)
    if (shifts(i) && k[i] == 0) return false;
  return true;
}

std::string to_string(BasisFamily family) {
  if (family.is_plain()) return "plain";
  std::string s = "shift{";
  bool first = true;
  for (int j = 0; j < 32; ++j) {
    if (family.shifts(j)) {
      s += (first ? "" : ",") + std::to_string(j + 1);
      first = false;
    }
  }
  return s + "}";
}

void Expansion::set(const MultiIndex& k, double c) {
  if (k.dim() != alpha.dim()) throw std::invalid_argument("Expansion::set: index dimension mismatch");
  if (!family.admits(k)) {
    if (c != 0.0) throw std::invalid_argument("Expansion::set: index " + to_string(k) + " has no member in family " + to_string(family));
    return;
  }
  coeffs[k] = c;
}

double Expansion::coeff(const MultiIndex& k) const {
  auto it = coeffs.find(k);
  return it == coeffs.end() ? 0.0 : it->second;
}

double Expansion::l2_norm() const {
  double s = 0.0;
  for (const auto& [k, c] : coeffs) s += c * c;
  return std::sqrt(s);
}

int Expansion::max_order() const {
  int m = 0;
  for (const auto& [k, c] : coeffs) m = std::max(m, k.order());
  return m;
}

double eigenvalue(const AlphaParam& alpha, int n) { return 4.0 * n + 2.0 * alpha.sum() + 2.0 * alpha.dim(); }

namespace {

double log_norm_1d(int k, double a) { return 0.5 * (std::numbers::ln2 + std::lgamma(k + 1.0) - std::lgamma(k + a + 1.0)); }

}  // namespace

double ell_1d(int k, double a, double x) {
  if (k < 0) return 0.0;
  const double u = x * x;
  return std::exp(log_norm_1d(k, a) - 0.5 * u) * laguerre_poly(k, a, u);
}

double ell_1d_derivative(int k, double a, double x) {
  if (k < 0) return 0.0;
  const double u = x * x;
  const double poly = -2.0 * x * laguerre_poly(k - 1, a + 1.0, u) - x * laguerre_poly(k, a, u);
  return std::exp(log_norm_1d(k, a) - 0.5 * u) * poly;
}

Eigen::VectorXd ell_1d_all(int kmax, double a, double x) {
  Eigen::VectorXd out(kmax + 1);
  const double u = x * x;
  double prev = 1.0, cur = 1.0 + a - u;
  for (int k = 0; k <= kmax; ++k) {
    double lk;
    if (k == 0) {
      lk = 1.0;
    } else if (k == 1) {
      lk = cur;
    } else {
      const double next = ((2.0 * (k - 1) + 1.0 + a - u) * cur - (k - 1 + a) * prev) / k;
      prev = cur;
      cur = next;
      lk = cur;
    }
    out[k] = std::exp(log_norm_1d(k, a) - 0.5 * u) * lk;
  }
  return out;
}

double ell(const AlphaParam& alpha, const MultiIndex& k, const Point& x) {
  double v = 1.0;
  for (int i = 0; i < alpha.dim(); ++i) v *= ell_1d(k[i], alpha[i], x[i]);
  return v;
}

double basis_eval(const AlphaParam& alpha, BasisFamily family, const MultiIndex& k, const Point& x) {
  if (!family.admits(k)) return 0.0;
  double v = 1.0;
  for (int i = 0; i < alpha.dim(); ++i)
    v *= family.shifts(i) ? x[i] * ell_1d(k[i] - 1, alpha[i] + 1.0, x[i]) : ell_1d(k[i], alpha[i], x[i]);
  return v;
}

BasisTable::BasisTable(const AlphaParam& alpha, const Point& x, int kmax) {
  for (int i = 0; i < alpha.dim(); ++i) {
    plain_.push_back(ell_1d_all(kmax, alpha[i], x[i]));
    Eigen::VectorXd s(kmax + 1);
    s[0] = 0.0;
    if (kmax >= 1) s.tail(kmax) = x[i] * ell_1d_all(kmax - 1, alpha[i] + 1.0, x[i]);
    shifted_.push_back(std::move(s));
  }
}

double BasisTable::value(BasisFamily family, const MultiIndex& k) const {
  double v = 1.0;
  for (int i = 0; i < k.dim(); ++i) v *= family.shifts(i) ? shifted_[i][k[i]] : plain_[i][k[i]];
  return v;
}

MuQuadrature mu_quadrature(const AlphaParam& alpha, int order) {
  const int d = alpha.dim();
  std::vector<Eigen::VectorXd> xs, ws;
  for (int i = 0; i < d; ++i) {
    const QuadratureRule r = gauss_laguerre_rule(order, alpha[i]);
    xs.push_back(r.nodes.cwiseSqrt());
    ws.push_back((r.log_weights + r.nodes).array().exp().matrix() * 0.5);
  }
  MuQuadrature q;
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(order);
  q.points.reserve(total);
  q.weights.resize(static_cast<Eigen::Index>(total));
  std::vector<int> idx(d, 0);
  Eigen::VectorXd p(d);
  for (std::size_t n = 0; n < total; ++n) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      p[i] = xs[i][idx[i]];
      w *= ws[i][idx[i]];
    }
    q.points.emplace_back(p);
    q.weights[static_cast<Eigen::Index>(n)] = w;
    for (int i = 0; i < d && ++idx[i] == order; ++i) idx[i] = 0;
  }
  return q;
}

Expansion analyze(const AlphaParam& alpha, BasisFamily family, const std::function<double(const Point&)>& f,
                  int cutoff, int order) {
  if (cutoff < 0) throw std::domain_error("analyze: cutoff must be >= 0");
  const MuQuadrature q = mu_quadrature(alpha, std::max(order, cutoff + 2));
  std::vector<double> fv(q.points.size());
  for (std::size_t n = 0; n < q.points.size(); ++n) fv[n] = f(q.points[n]);
  const auto indices = indices_up_to(alpha.dim(), cutoff);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t n = 0; n < q.points.size(); ++n) {
    if (fv[n] == 0.0) continue;
    const BasisTable table(alpha, q.points[n], cutoff);
    const double wf = q.weights[static_cast<Eigen::Index>(n)] * fv[n];
    for (std::size_t m = 0; m < indices.size(); ++m)
      if (family.admits(indices[m])) acc[static_cast<Eigen::Index>(m)] += wf * table.value(family, indices[m]);
  }
  Expansion e(alpha, family);
  for (std::size_t m = 0; m < indices.size(); ++m)
    if (family.admits(indices[m])) e.coeffs[indices[m]] = acc[static_cast<Eigen::Index>(m)];
  return e;
}

double synthesize(const Expansion& e, const Point& x) {
  if (e.coeffs.empty()) return 0.0;
  const BasisTable table(e.alpha, x, e.max_order());
  double s = 0.0;
  for (const auto& [k, c] : e.coeffs) s += c * table.value(e.family, k);
  return s;
}

Expansion delta_apply(const Expansion& e, int j) {
  if (j < 0 || j >= e.alpha.dim()) throw std::invalid_argument("delta_apply: coordinate out of range");
  if (e.family.shifts(j))
    throw std::invalid_argument("delta_apply: family " + to_string(e.family) + " already shifts coordinate " +
                                std::to_string(j + 1));
  Expansion out(e.alpha, e.family.with(j));
  for (const auto& [k, c] : e.coeffs)
    if (k[j] > 0) out.coeffs[k] = -2.0 * std::sqrt(static_cast<double>(k[j])) * c;
  return out;
}

Expansion delta_star_apply(const Expansion& e, int j) {
  if (j < 0 || j >= e.alpha.dim()) throw std::invalid_argument("delta_star_apply: coordinate out of range");
  if (!e.family.shifts(j))
    throw std::invalid_argument("delta_star_apply: family " + to_string(e.family) + " does not shift coordinate " +
                                std::to_string(j + 1));
  Expansion out(e.alpha, e.family.without(j));
  for (const auto& [k, c] : e.coeffs) out.coeffs[k] = -2.0 * std::sqrt(static_cast<double>(k[j])) * c;
  return out;
}

Expansion laguerre_operator_apply(const Expansion& e) {
  if (!e.family.is_plain()) throw std::invalid_argument("laguerre_operator_apply: expansion must be in the plain system");
  Expansion out = e;
  for (auto& [k, c] : out.coeffs) c *= eigenvalue(e.alpha, k.order());
  return out;
}

Expansion riesz_transform(const Expansion& e, int j) {
  if (!e.family.is_plain()) throw std::invalid_argument("riesz_transform: expansion must be in the plain system");
  Expansion out = delta_apply(e, j);
  for (auto& [k, c] : out.coeffs) c /= std::sqrt(eigenvalue(e.alpha, k.order()));
  return out;
}

}  // namespace lps
