#pragma once

// Scalar special functions used by the Laguerre expansion, heat kernel and
// subordination code. Everything is real-valued double precision.

namespace lps {

/// Gamma function for z > 0. Throws std::domain_error otherwise.
double gamma_fn(double z);

/// log Gamma(z) for z > 0.
double log_gamma(double z);

/// Generalized Laguerre polynomial L_k^a(x) by the upward three-term recurrence.
double laguerre_poly(int k, double a, double x);

/// d/dx L_k^a(x) = -L_{k-1}^{a+1}(x).
double laguerre_poly_derivative(int k, double a, double x);

/// log of the scaled modified Bessel function i_nu(z) = z^{-nu} I_nu(z).
///
/// i_nu is entire in z and positive for z >= 0; at z = 0 it equals
/// 1 / (2^nu Gamma(nu+1)). Below z = 20 the ascending series is summed
/// directly, above it the large-argument expansion of e^{-z} I_nu(z) is
/// used and the exponential is kept in the returned logarithm, so the
/// result never overflows. Requires nu > -1.
double log_scaled_bessel_i(double nu, double z);

/// log(e^{-z} i_nu(z)), without forming z - z for large arguments.
double log_scaled_bessel_ie(double nu, double z);

/// i_nu(z) = exp(log_scaled_bessel_i(nu, z)); overflows for z beyond ~700.
double scaled_bessel_i(double nu, double z);

/// I_{nu+1}(z)/I_nu(z) - 1, i.e. z i_{nu+1}(z)/i_nu(z) - 1. Tends to -1 as z -> 0.
double bessel_ratio_minus_one(double nu, double z);

}  // namespace lps
