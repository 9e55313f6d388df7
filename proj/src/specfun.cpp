#include "lps/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace lps {

namespace {

constexpr double kSeriesSwitch = 20.0;
constexpr int kMaxAsymptoticTerms = 60;

// Terms of the large-argument expansion
//   e^{-z} I_nu(z) sqrt(2 pi z) ~ sum_k (-1)^k a_k(nu) / z^k.
// Returns false if the terms stop decreasing before reaching roundoff.
bool asymptotic_terms(double nu, double z, std::vector<double>& terms) {
  terms.clear();
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  terms.push_back(term);
  double prev = 1.0;
  for (int k = 1; k <= kMaxAsymptoticTerms; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * z);
    if (term == 0.0) return true;
    if (std::abs(term) > std::abs(prev)) return false;
    terms.push_back(term);
    if (std::abs(term) < 1e-17) return true;
    prev = term;
  }
  return false;
}

double log_series_small(double nu, double z) {
  const double q = 0.25 * z * z;
  double term = 1.0 / std::tgamma(nu + 1.0);
  double sum = term;
  for (int m = 0; m < 500; ++m) {
    term *= q / ((m + 1.0) * (m + 1.0 + nu));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::log(sum) - nu * std::numbers::ln2;
}

// Ascending series summed around its peak term in log space; used when the
// asymptotic expansion is not accurate (large order relative to z).
double log_series_scaled(double nu, double z) {
  const double log_half_z = std::log(0.5 * z);
  auto log_term = [&](double m) {
    return 2.0 * m * log_half_z - std::lgamma(m + 1.0) - std::lgamma(m + nu + 1.0);
  };
  const double peak = std::floor(0.5 * (-nu + std::sqrt(nu * nu + z * z)));
  const double lpeak = log_term(peak);
  double sum = 0.0;
  for (double m = peak; m >= 0.0; m -= 1.0) {
    const double r = std::exp(log_term(m) - lpeak);
    sum += r;
    if (r < 1e-18) break;
  }
  for (double m = peak + 1.0;; m += 1.0) {
    const double r = std::exp(log_term(m) - lpeak);
    sum += r;
    if (r < 1e-18) break;
  }
  return lpeak + std::log(sum) - nu * std::numbers::ln2;
}

void check_order(double nu) {
  if (!(nu > -1.0)) throw std::domain_error("scaled_bessel_i: order must be > -1, got " + std::to_string(nu));
}

}  // namespace

double gamma_fn(double z) {
  if (!(z > 0.0)) throw std::domain_error("gamma_fn: argument must be positive, got " + std::to_string(z));
  return std::tgamma(z);
}

double log_gamma(double z) {
  if (!(z > 0.0)) throw std::domain_error("log_gamma: argument must be positive, got " + std::to_string(z));
  return std::lgamma(z);
}

double laguerre_poly(int k, double a, double x) {
  if (k < 0) return 0.0;
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 1.0 + a - x;
  for (int n = 1; n < k; ++n) {
    const double next = ((2.0 * n + 1.0 + a - x) * cur - (n + a) * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_poly_derivative(int k, double a, double x) {
  return -laguerre_poly(k - 1, a + 1.0, x);
}

double log_scaled_bessel_i(double nu, double z) {
  check_order(nu);
  if (z < 0.0) throw std::domain_error("scaled_bessel_i: argument must be nonnegative");
  if (z < kSeriesSwitch) return log_series_small(nu, z);
  std::vector<double> terms;
  if (asymptotic_terms(nu, z, terms)) {
    double s = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) s += *it;
    return z - 0.5 * std::log(2.0 * std::numbers::pi * z) - nu * std::log(z) + std::log(s);
  }
  return log_series_scaled(nu, z);
}

double log_scaled_bessel_ie(double nu, double z) {
  check_order(nu);
  if (z < 0.0) throw std::domain_error("scaled_bessel_i: argument must be nonnegative");
  if (z < kSeriesSwitch) return log_series_small(nu, z) - z;
  std::vector<double> terms;
  if (asymptotic_terms(nu, z, terms)) {
    double s = 0.0;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) s += *it;
    return -0.5 * std::log(2.0 * std::numbers::pi * z) - nu * std::log(z) + std::log(s);
  }
  return log_series_scaled(nu, z) - z;
}

double scaled_bessel_i(double nu, double z) { return std::exp(log_scaled_bessel_i(nu, z)); }

double bessel_ratio_minus_one(double nu, double z) {
  check_order(nu);
  if (z <= 0.0) return -1.0;
  if (z >= kSeriesSwitch) {
    // The leading terms cancel exactly; subtract the expansions termwise.
    std::vector<double> lo, hi;
    if (asymptotic_terms(nu, z, lo) && asymptotic_terms(nu + 1.0, z, hi)) {
      const std::size_t n = std::max(lo.size(), hi.size());
      double diff = 0.0, base = 0.0;
      for (std::size_t k = n; k-- > 0;) {
        const double a = k < lo.size() ? lo[k] : 0.0;
        const double b = k < hi.size() ? hi[k] : 0.0;
        if (k > 0) diff += b - a;
        base += a;
      }
      return diff / base;
    }
  }
  return std::expm1(std::log(z) + log_scaled_bessel_i(nu + 1.0, z) - log_scaled_bessel_i(nu, z));
}

}  // namespace lps
