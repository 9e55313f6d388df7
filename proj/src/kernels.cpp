#include "lps/kernels.hpp"

#include "lps/laguerre.hpp"
#include "lps/specfun.hpp"

#include <cmath>
#include <numbers>
#include <regex>

namespace lps {

TimeNode TimeNode::from_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("time must be positive and finite");
  const double e = std::exp(-2.0 * t);
  TimeNode n;
  n.t = t;
  n.zeta = -std::expm1(-2.0 * t) / (1.0 + e);
  n.one_minus_zeta = 2.0 * e / (1.0 + e);
  return n;
}

// ---------------------------------------------------------------- KernelKind

namespace {

using Tag = KernelKind::Tag;

struct TagInfo {
  Tag tag;
  const char* name;
  int indices;  // number of coordinate indices in the name
};

constexpr TagInfo kTags[] = {
    {Tag::dT, "dT", 0},          {Tag::dP, "dP", 0},         {Tag::hT, "hT", 1},
    {Tag::hP, "hP", 1},          {Tag::dTmod, "dTmod", 1},   {Tag::dPmod, "dPmod", 1},
    {Tag::hTmod, "hTmod", 2},    {Tag::hPmod, "hPmod", 2},   {Tag::hTmodStar, "hTmodStar", 1},
    {Tag::hPmodStar, "hPmodStar", 1},
};

const TagInfo& info(Tag t) {
  for (const auto& ti : kTags)
    if (ti.tag == t) return ti;
  throw std::logic_error("unknown kernel tag");
}

}  // namespace

bool KernelKind::is_poisson() const {
  switch (tag) {
    case Tag::dP:
    case Tag::hP:
    case Tag::dPmod:
    case Tag::hPmod:
    case Tag::hPmodStar:
      return true;
    default:
      return false;
  }
}

bool KernelKind::is_modified() const {
  switch (tag) {
    case Tag::dTmod:
    case Tag::dPmod:
    case Tag::hTmod:
    case Tag::hPmod:
    case Tag::hTmodStar:
    case Tag::hPmodStar:
      return true;
    default:
      return false;
  }
}

MeasureKind KernelKind::measure() const {
  switch (tag) {
    case Tag::hT:
    case Tag::hTmod:
    case Tag::hTmodStar:
      return MeasureKind::dt;
    default:
      return MeasureKind::t_dt;
  }
}

std::string KernelKind::name() const {
  const TagInfo& ti = info(tag);
  std::string s = ti.name;
  switch (tag) {
    case Tag::hT:
    case Tag::hP:
      return s + "(" + std::to_string(i + 1) + ")";
    case Tag::hTmod:
    case Tag::hPmod:
      return s + "(" + std::to_string(j + 1) + "," + std::to_string(i + 1) + ")";
    case Tag::dTmod:
    case Tag::dPmod:
    case Tag::hTmodStar:
    case Tag::hPmodStar:
      return s + "(" + std::to_string(j + 1) + ")";
    default:
      return s;
  }
}

KernelKind KernelKind::parse(const std::string& name, int d) {
  static const std::regex re(R"(^\s*([A-Za-z]+)\s*(?:\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw std::invalid_argument("unknown kernel kind '" + name + "'");
  const std::string head = m[1];
  for (const auto& ti : kTags) {
    if (head != ti.name) continue;
    std::vector<int> idx;
    if (m[2].matched) idx.push_back(std::stoi(m[2]));
    if (m[3].matched) idx.push_back(std::stoi(m[3]));
    // dT and dP take no index; a bare "hT" means coordinate 1.
    if (idx.empty() && ti.indices >= 1) idx.push_back(1);
    if (idx.size() == 1 && ti.indices == 2) throw std::invalid_argument(std::string(ti.name) + " needs two indices (j,i)");
    if (static_cast<int>(idx.size()) != ti.indices)
      throw std::invalid_argument("wrong number of indices in kernel kind '" + name + "'");
    for (int v : idx)
      if (v < 1 || v > d) throw std::invalid_argument("index out of range 1.." + std::to_string(d) + " in '" + name + "'");
    KernelKind k;
    k.tag = ti.tag;
    switch (ti.tag) {
      case Tag::hT:
      case Tag::hP:
        k.i = idx[0] - 1;
        break;
      case Tag::hTmod:
      case Tag::hPmod:
        k.j = idx[0] - 1;
        k.i = idx[1] - 1;
        if (k.i == k.j) throw std::invalid_argument(std::string(ti.name) + " requires i != j");
        break;
      case Tag::dTmod:
      case Tag::dPmod:
      case Tag::hTmodStar:
      case Tag::hPmodStar:
        k.j = idx[0] - 1;
        break;
      default:
        break;
    }
    return k;
  }
  throw std::invalid_argument("unknown kernel kind '" + name + "'");
}

std::vector<KernelKind> KernelKind::all(int d) {
  std::vector<KernelKind> out;
  for (const auto& ti : kTags) {
    switch (ti.indices) {
      case 0:
        out.push_back({ti.tag, -1, -1});
        break;
      case 1:
        for (int a = 0; a < d; ++a) {
          KernelKind k{ti.tag, -1, -1};
          if (ti.tag == Tag::hT || ti.tag == Tag::hP)
            k.i = a;
          else
            k.j = a;
          out.push_back(k);
        }
        break;
      default:
        for (int j = 0; j < d; ++j)
          for (int i = 0; i < d; ++i)
            if (i != j) out.push_back({ti.tag, i, j});
    }
  }
  return out;
}

std::vector<KernelKind> KernelKind::representatives(int d) {
  std::vector<KernelKind> out;
  for (const auto& ti : kTags) {
    if (ti.indices == 2 && d < 2) continue;
    KernelKind k{ti.tag, -1, -1};
    if (ti.tag == Tag::hT || ti.tag == Tag::hP) k.i = 0;
    if (ti.indices == 1 && k.i < 0) k.j = 0;
    if (ti.indices == 2) {
      k.j = 0;
      k.i = 1;
    }
    out.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------- log-space kernel

namespace {

enum class Var { none, t, x };

struct LogEval {
  double log_value = 0.0;
  double dlog = 0.0;  // d/dt or d/dx_i of log K
};

double log_sinh2t(const TimeNode& n) {
  return std::numbers::ln2 + std::log(n.zeta) - std::log(n.one_minus_zeta) - std::log1p(n.zeta);
}

// log of the heat kernel (mod_j < 0) or of e^{-2t} x_j y_j G^{alpha+e_j} (mod_j >= 0).
LogEval log_kernel(const AlphaParam& alpha, int mod_j, const TimeNode& n, const double* x, const double* y, Var var,
                   int vi) {
  const double zeta = n.zeta;
  const double omega = n.one_minus_zeta * (1.0 + zeta);
  const double log_s = log_sinh2t(n);
  LogEval out;
  for (int c = 0; c < alpha.dim(); ++c) {
    const double nu = alpha[c] + (c == mod_j ? 1.0 : 0.0);
    const double a = x[c] - y[c];
    const double b = x[c] + y[c];
    const double z = x[c] * y[c] * omega / (2.0 * zeta);
    out.log_value += -(1.0 + nu) * log_s - a * a / (4.0 * zeta) - zeta * b * b / 4.0 + log_scaled_bessel_ie(nu, z);
    if (var == Var::t) {
      const double r = bessel_ratio_minus_one(nu, z);
      const double c2 = (1.0 + zeta * zeta) / zeta;
      out.dlog += -(1.0 + nu) * c2 + omega * (a * a / (4.0 * zeta * zeta) - b * b / 4.0) - r * z * c2;
    } else if (var == Var::x && c == vi) {
      const double r = bessel_ratio_minus_one(nu, z);
      out.dlog += -a / (2.0 * zeta) - zeta * b / 2.0 + r * z / x[c];
    }
  }
  if (mod_j >= 0) {
    out.log_value += std::log(n.one_minus_zeta) - std::log1p(zeta) + std::log(x[mod_j]) + std::log(y[mod_j]);
    if (var == Var::t) out.dlog -= 2.0;
    if (var == Var::x && vi == mod_j) out.dlog += 1.0 / x[mod_j];
  }
  return out;
}

double kernel_value(const AlphaParam& alpha, int mod_j, const TimeNode& n, const double* x, const double* y) {
  return std::exp(log_kernel(alpha, mod_j, n, x, y, Var::none, -1).log_value);
}

enum class Op { value, dt, delta, delta_star };

struct OpSpec {
  int mod_j;
  Op op;
  int coord;
};

OpSpec op_of(const KernelKind& k) {
  switch (k.tag) {
    case Tag::dT: return {-1, Op::dt, -1};
    case Tag::dP: return {-1, Op::value, -1};
    case Tag::hT:
    case Tag::hP: return {-1, Op::delta, k.i};
    case Tag::dTmod: return {k.j, Op::dt, -1};
    case Tag::dPmod: return {k.j, Op::value, -1};
    case Tag::hTmod:
    case Tag::hPmod: return {k.j, Op::delta, k.i};
    case Tag::hTmodStar:
    case Tag::hPmodStar: return {k.j, Op::delta_star, k.j};
  }
  throw std::logic_error("unknown kernel tag");
}

double five_point(double fm2, double fm1, double fp1, double fp2, double h) {
  return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
}

double apply_op(const AlphaParam& alpha, const OpSpec& s, const TimeNode& n, const double* x, const double* y,
                DerivativeMode mode) {
  if (s.op == Op::value) return kernel_value(alpha, s.mod_j, n, x, y);
  if (mode == DerivativeMode::analytic) {
    const LogEval e = log_kernel(alpha, s.mod_j, n, x, y, s.op == Op::dt ? Var::t : Var::x, s.coord);
    const double k = std::exp(e.log_value);
    if (k == 0.0) return 0.0;
    switch (s.op) {
      case Op::dt: return k * e.dlog;
      case Op::delta: return k * (e.dlog + x[s.coord]);
      default: return k * (-e.dlog + x[s.coord] - (2.0 * alpha[s.coord] + 1.0) / x[s.coord]);
    }
  }
  if (s.op == Op::dt) {
    const double h = 1e-3 * std::min(n.t, 1.0);
    double f[4];
    const double off[4] = {-2.0, -1.0, 1.0, 2.0};
    for (int q = 0; q < 4; ++q) f[q] = kernel_value(alpha, s.mod_j, TimeNode::from_t(n.t + off[q] * h), x, y);
    return five_point(f[0], f[1], f[2], f[3], h);
  }
  const int c = s.coord;
  const double spread = std::abs(x[c] - y[c]) + 1e-300;
  const double h = 1e-3 * std::min({x[c], std::sqrt(n.zeta), n.zeta / spread});
  std::vector<double> xs(x, x + alpha.dim());
  double f[4];
  const double off[4] = {-2.0, -1.0, 1.0, 2.0};
  for (int q = 0; q < 4; ++q) {
    xs[c] = x[c] + off[q] * h;
    f[q] = kernel_value(alpha, s.mod_j, n, xs.data(), y);
  }
  const double dk = five_point(f[0], f[1], f[2], f[3], h);
  const double k = kernel_value(alpha, s.mod_j, n, x, y);
  if (s.op == Op::delta) return dk + x[c] * k;
  return -dk + (x[c] - (2.0 * alpha[c] + 1.0) / x[c]) * k;
}

void check_dims(const AlphaParam& alpha, const Point& x, const Point& y) {
  if (x.dim() != alpha.dim() || y.dim() != alpha.dim()) throw std::invalid_argument("point dimension does not match alpha");
}

void check_kind(const AlphaParam& alpha, const KernelKind& k) {
  const int d = alpha.dim();
  const bool needs_i = k.tag == Tag::hT || k.tag == Tag::hP || k.tag == Tag::hTmod || k.tag == Tag::hPmod;
  if (needs_i && (k.i < 0 || k.i >= d)) throw std::invalid_argument("kernel kind " + k.name() + ": index i out of range");
  if (k.is_modified() && (k.j < 0 || k.j >= d)) throw std::invalid_argument("kernel kind " + k.name() + ": index j out of range");
  if ((k.tag == Tag::hTmod || k.tag == Tag::hPmod) && k.i == k.j)
    throw std::invalid_argument("kernel kind " + k.name() + " requires i != j");
}

// Per-coordinate products phi_k(x) phi_k(y), k = 0..cutoff, for the plain or shifted coordinate system.
Eigen::VectorXd coordinate_products(double a, bool shifted, double x, double y, int cutoff) {
  if (!shifted) return ell_1d_all(cutoff, a, x).cwiseProduct(ell_1d_all(cutoff, a, y));
  Eigen::VectorXd p = Eigen::VectorXd::Zero(cutoff + 1);
  if (cutoff >= 1)
    p.tail(cutoff) = x * y * ell_1d_all(cutoff - 1, a + 1.0, x).cwiseProduct(ell_1d_all(cutoff - 1, a + 1.0, y));
  return p;
}

// c_n = sum_{|k| = n} prod_i p_i[k_i], n = 0..cutoff.
Eigen::VectorXd shell_sums(const AlphaParam& alpha, int mod_j, const Point& x, const Point& y, int cutoff) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(cutoff + 1);
  acc[0] = 1.0;
  for (int c = 0; c < alpha.dim(); ++c) {
    const Eigen::VectorXd p = coordinate_products(alpha[c], c == mod_j, x[c], y[c], cutoff);
    Eigen::VectorXd next = Eigen::VectorXd::Zero(cutoff + 1);
    for (int n = 0; n <= cutoff; ++n)
      for (int m = 0; m <= n; ++m) next[n] += acc[m] * p[n - m];
    acc = next;
  }
  return acc;
}

}  // namespace

double log_heat_kernel_closed(const AlphaParam& alpha, const TimeNode& node, const Point& x, const Point& y) {
  check_dims(alpha, x, y);
  return log_kernel(alpha, -1, node, x.coords().data(), y.coords().data(), Var::none, -1).log_value;
}

double heat_kernel_closed(const AlphaParam& alpha, double t, const Point& x, const Point& y) {
  return std::exp(log_heat_kernel_closed(alpha, TimeNode::from_t(t), x, y));
}

double heat_kernel_spectral(const AlphaParam& alpha, double t, const Point& x, const Point& y, int cutoff) {
  check_dims(alpha, x, y);
  if (cutoff < 0) throw std::domain_error("heat_kernel_spectral: cutoff must be >= 0");
  const Eigen::VectorXd c = shell_sums(alpha, -1, x, y, cutoff);
  double s = 0.0;
  for (int n = cutoff; n >= 0; --n) s += std::exp(-t * eigenvalue(alpha, n)) * c[n];
  return s;
}

double q_plus(const Point& x, const Point& y, const Eigen::VectorXd& s) {
  return x.coords().squaredNorm() + y.coords().squaredNorm() +
         2.0 * (x.coords().array() * y.coords().array() * s.array()).sum();
}

double q_minus(const Point& x, const Point& y, const Eigen::VectorXd& s) {
  return x.coords().squaredNorm() + y.coords().squaredNorm() -
         2.0 * (x.coords().array() * y.coords().array() * s.array()).sum();
}

double heat_kernel_schlafli(const AlphaParam& alpha, double t, const Point& x, const Point& y, int order) {
  check_dims(alpha, x, y);
  if (!alpha.cz_eligible()) throw std::domain_error("heat_kernel_schlafli: alpha must lie in [-1/2, inf)^d");
  const TimeNode n = TimeNode::from_t(t);
  const double zeta = n.zeta;
  const double omega = n.one_minus_zeta * (1.0 + zeta);
  const int d = alpha.dim();
  // The exponent -q_+/(4 zeta) - zeta q_-/4 equals its value at s = (-1,..,-1)
  // minus sum_i z_i (1 + s_i), z_i = x_i y_i / sinh 2t.
  double log_pref = -(d + alpha.sum()) * log_sinh2t(n);
  Eigen::VectorXd z(d);
  for (int c = 0; c < d; ++c) {
    const double a = x[c] - y[c], b = x[c] + y[c];
    log_pref += -a * a / (4.0 * zeta) - zeta * b * b / 4.0;
    z[c] = x[c] * y[c] * omega / (2.0 * zeta);
  }
  const double integral = pi_alpha_integrate(
      alpha,
      [&](std::span<const double> s) {
        double e = 0.0;
        for (int c = 0; c < d; ++c) e += z[c] * (1.0 + s[c]);
        return std::exp(-e);
      },
      order);
  return std::exp(log_pref) * integral;
}

double modified_heat_kernel(const AlphaParam& alpha, int j, double t, const Point& x, const Point& y) {
  check_dims(alpha, x, y);
  if (j < 0 || j >= alpha.dim()) throw std::invalid_argument("modified_heat_kernel: j out of range");
  return kernel_value(alpha, j, TimeNode::from_t(t), x.coords().data(), y.coords().data());
}

double modified_heat_kernel_spectral(const AlphaParam& alpha, int j, double t, const Point& x, const Point& y,
                                     int cutoff) {
  check_dims(alpha, x, y);
  if (j < 0 || j >= alpha.dim()) throw std::invalid_argument("modified_heat_kernel_spectral: j out of range");
  const Eigen::VectorXd c = shell_sums(alpha, j, x, y, cutoff);
  double s = 0.0;
  for (int n = cutoff; n >= 1; --n) s += std::exp(-t * eigenvalue(alpha, n)) * c[n];
  return s;
}

double poisson_kernel(const AlphaParam& alpha, KernelVariant variant, double t, const Point& x, const Point& y,
                      int u_order, SubordinationMethod method) {
  check_dims(alpha, x, y);
  if (!(t > 0.0)) throw std::domain_error("poisson_kernel: t must be positive");
  if (variant.is_modified() && variant.j >= alpha.dim()) throw std::invalid_argument("poisson_kernel: j out of range");
  const double* xp = x.coords().data();
  const double* yp = y.coords().data();
  auto heat = [&](double u) {
    const double tau = t * t / (4.0 * u);
    return kernel_value(alpha, variant.j, TimeNode::from_t(tau), xp, yp);
  };
  if (method == SubordinationMethod::gauss_laguerre) {
    const QuadratureRule r = gauss_laguerre_rule(u_order, -0.5);
    return r.integrate(heat) / std::sqrt(std::numbers::pi);
  }
  const double lambda_min = std::max(eigenvalue(alpha, 0), 1e-3);
  return subordination_rule(t, lambda_min).integrate(heat);
}

double poisson_kernel_spectral(const AlphaParam& alpha, KernelVariant variant, double t, const Point& x,
                               const Point& y, int cutoff) {
  check_dims(alpha, x, y);
  const Eigen::VectorXd c = shell_sums(alpha, variant.j, x, y, cutoff);
  double s = 0.0;
  for (int n = cutoff; n >= 0; --n) s += std::exp(-t * std::sqrt(eigenvalue(alpha, n))) * c[n];
  return s;
}

double heat_quantity(const AlphaParam& alpha, const KernelKind& kind, const TimeNode& node, const Point& x,
                     const Point& y, DerivativeMode mode) {
  check_dims(alpha, x, y);
  check_kind(alpha, kind);
  return apply_op(alpha, op_of(kind), node, x.coords().data(), y.coords().data(), mode);
}

TimeProfile kernel_entry(const AlphaParam& alpha, const KernelKind& kind, const Point& x, const Point& y,
                         const ZetaGrid& grid, DerivativeMode mode) {
  check_dims(alpha, x, y);
  check_kind(alpha, kind);
  if (!alpha.cz_eligible()) throw std::domain_error("kernel_entry: alpha must lie in [-1/2, inf)^d");
  if (x.coords() == y.coords()) throw SingularInputError("kernel_entry: x = y is on the diagonal");
  const OpSpec spec = op_of(kind);
  const double* xp = x.coords().data();
  const double* yp = y.coords().data();
  const Eigen::Index n = grid.size();
  Eigen::VectorXd values(n);
  if (!kind.is_poisson()) {
    for (Eigen::Index p = 0; p < n; ++p) {
      TimeNode node{grid.t()[p], grid.zeta()[p], grid.one_minus_zeta()[p]};
      values[p] = apply_op(alpha, spec, node, xp, yp, mode);
    }
    return make_profile(grid, kind.measure(), std::move(values));
  }
  const Eigen::VectorXd& tau = grid.tau();
  Eigen::VectorXd h(tau.size());
  for (Eigen::Index q = 0; q < tau.size(); ++q) h[q] = apply_op(alpha, spec, TimeNode::from_t(tau[q]), xp, yp, mode);
  const bool time_derivative = kind.tag == Tag::dP || kind.tag == Tag::dPmod;
  if (!time_derivative) {
    values = grid.subordination() * h;
  } else if (mode == DerivativeMode::analytic) {
    values = grid.subordination_dt() * h;
  } else {
    for (Eigen::Index p = 0; p < n; ++p) {
      const double t = grid.t()[p];
      const double dt = 1e-3 * std::min(t, 1.0);
      double f[4];
      const double off[4] = {-2.0, -1.0, 1.0, 2.0};
      for (int q = 0; q < 4; ++q) f[q] = grid.subordination_row(t + off[q] * dt, false).dot(h);
      values[p] = five_point(f[0], f[1], f[2], f[3], dt);
    }
  }
  return make_profile(grid, kind.measure(), std::move(values));
}

}  // namespace lps
