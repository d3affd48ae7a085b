#ifndef FRACCFT_SPECIAL_FUNCTIONS_HPP
#define FRACCFT_SPECIAL_FUNCTIONS_HPP

// Bessel J for integer and half-integer orders, the regularised form
// J~_nu(t) = t^-nu J_nu(t), Gegenbauer, Chebyshev and Laguerre polynomials.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"

namespace fraccft::special {

namespace detail {

inline bool is_integer(double v) { return v == std::floor(v); }
inline bool is_half_integer(double v) { return is_integer(v - 0.5); }

/// Orders the library guarantees: n or n + 1/2 with n >= -1.
inline void check_order(double nu) {
  if (!std::isfinite(nu) || nu < -1.0 || !(is_integer(nu) || is_half_integer(nu)))
    throw domain_error("unsupported Bessel order " + std::to_string(nu) +
                       " (integer or half-integer >= -1 required)");
}

/// Series core  S = sum_k (-t^2/4)^k Gamma(nu+1) / (k! Gamma(k+nu+1)),  nu > -1.
inline double normalized_series(double nu, double t) {
  const double q = -0.25 * t * t;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (k + nu));
    sum += term;
    // stop once terms are shrinking and negligible
    if (std::abs(term) <= 1e-17 * std::abs(sum) && -q < (k + 1.0) * (k + 1.0 + nu)) break;
  }
  return sum;
}

/// log of 1 / (2^nu Gamma(nu+1)) and the same with the (t/2)^nu factor, nu > -1.
inline double log_series_prefactor(double nu) { return -nu * std::numbers::ln2 - std::lgamma(nu + 1.0); }

/// Regime where the ascending series is well conditioned.
inline bool series_regime(double nu, double x) { return x <= 2.0 || 0.25 * x * x <= 0.5 * (nu + 1.0); }

/// Miller backward recurrence for the family nu = frac + n, n = 0..n_hi
/// (frac = 0 or 1/2). Normalised with the Neumann sum (integer family) or the
/// elementary J_{+-1/2} (half-integer family). Returns J_{frac+n}, n = 0..n_hi.
inline std::vector<double> miller_family(bool half, int n_hi, double x) {
  const double frac = half ? 0.5 : 0.0;
  const double top = std::max(static_cast<double>(n_hi), x);
  int start = static_cast<int>(std::ceil(top)) + 30 + static_cast<int>(std::ceil(std::sqrt(40.0 * std::max(x, 1.0))));
  if (!half && (start & 1)) ++start;

  std::vector<double> out(static_cast<std::size_t>(n_hi) + 1, 0.0);
  double next = 0.0, cur = 1.0;  // J_{start+1}, J_{start}, unnormalized
  double neumann = 0.0;
  double jminus = 0.0;  // J_{-1/2} for the half family
  for (int n = start; n >= (half ? -1 : 0); --n) {
    if (n <= n_hi && n >= 0) out[n] = cur;
    if (!half && n % 2 == 0) neumann += (n == 0 ? 1.0 : 2.0) * cur;
    if (half && n == -1) jminus = cur;
    if (n == (half ? -1 : 0)) break;
    const double nu = frac + n;
    const double prev = 2.0 * nu / x * cur - next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      const double s = 1e-250;
      cur *= s;
      next *= s;
      neumann *= s;
      for (auto& v : out) v *= s;
    }
  }
  double scale;
  if (!half) {
    scale = 1.0 / neumann;
  } else {
    const double a = std::sqrt(2.0 / (std::numbers::pi * x));
    const double true_p = a * std::sin(x), true_m = a * std::cos(x);
    const double big = std::max(std::abs(out[0]), std::abs(jminus));
    const double c_p = out[0] / big, c_m = jminus / big;
    scale = (true_p * c_p + true_m * c_m) / (c_p * c_p + c_m * c_m) / big;
  }
  for (auto& v : out) v *= scale;
  return out;
}

}  // namespace detail

/// Gamma function. Poles (non-positive integers) are rejected.
inline double gamma_fn(double x) {
  if (!std::isfinite(x) || (x <= 0.0 && detail::is_integer(x)))
    throw domain_error("Gamma has a pole at " + std::to_string(x));
  return std::tgamma(x);
}

/// J_nu(x), x >= 0, nu an integer or half-integer >= -1.
inline double bessel_j(double nu, double x) {
  detail::check_order(nu);
  if (!(x >= 0.0) || !std::isfinite(x)) throw domain_error("bessel_j requires finite x >= 0");
  if (nu == -1.0) return -bessel_j(1.0, x);
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu < 0.0) return std::numeric_limits<double>::infinity();
    return 0.0;
  }
  if (nu == -0.5) return std::sqrt(2.0 / (std::numbers::pi * x)) * std::cos(x);
  if (nu == 0.5) return std::sqrt(2.0 / (std::numbers::pi * x)) * std::sin(x);
  if (detail::series_regime(nu, x)) {
    const double lead = nu < 100.0 ? std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0)
                                   : std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
    return lead * detail::normalized_series(nu, x);
  }
  const bool half = detail::is_half_integer(nu);
  const int n = static_cast<int>(nu - (half ? 0.5 : 0.0));
  return detail::miller_family(half, n, x)[n];
}

/// J_{nu0 + k}(x) for k = 0..count-1 in one pass; nu0 as for bessel_j, nu0 >= 0.
inline std::vector<double> bessel_j_sequence(double nu0, int count, double x) {
  detail::check_order(nu0);
  if (nu0 < 0.0) throw domain_error("bessel_j_sequence requires nu0 >= 0");
  if (!(x >= 0.0) || !std::isfinite(x)) throw domain_error("bessel_j_sequence requires finite x >= 0");
  std::vector<double> out(count);
  if (count == 0) return out;
  if (x <= 2.0 || x == 0.0) {
    for (int k = 0; k < count; ++k) out[k] = bessel_j(nu0 + k, x);
    return out;
  }
  const bool half = detail::is_half_integer(nu0);
  const int n0 = static_cast<int>(nu0 - (half ? 0.5 : 0.0));
  const auto fam = detail::miller_family(half, n0 + count - 1, x);
  for (int k = 0; k < count; ++k) out[k] = fam[n0 + k];
  return out;
}

/// J~_nu(t) = t^-nu J_nu(t), an entire even function of t; J~_nu(0) = 1 / (2^nu Gamma(nu+1)).
/// Negative t is accepted through evenness.
inline double bessel_j_tilde(double nu, double t) {
  detail::check_order(nu);
  if (!std::isfinite(t)) throw domain_error("bessel_j_tilde requires finite t");
  t = std::abs(t);
  if (nu == -1.0) return -t * t * bessel_j_tilde(1.0, t);
  if (nu == -0.5) return std::sqrt(2.0 / std::numbers::pi) * std::cos(t);
  if (t < 1e-4 || detail::series_regime(nu, t)) {
    const double lead = nu < 100.0 ? 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0))
                                   : std::exp(detail::log_series_prefactor(nu));
    return lead * detail::normalized_series(nu, t);
  }
  if (nu == 0.5) return std::sqrt(2.0 / std::numbers::pi) * std::sin(t) / t;
  return bessel_j(nu, t) * std::exp(-nu * std::log(t));
}

/// J~_{q - 1/2}(t) for q = 0..count-1. Upward recurrence from the elementary
/// orders where it is stable (order below t), per-order evaluation otherwise.
inline std::vector<double> bessel_j_tilde_half_sequence(int count, double t) {
  if (!std::isfinite(t)) throw domain_error("bessel_j_tilde_half_sequence requires finite t");
  t = std::abs(t);
  std::vector<double> out(std::max(count, 0));
  if (count <= 0) return out;
  if (t < std::max(2.0, static_cast<double>(count))) {
    for (int q = 0; q < count; ++q) out[q] = bessel_j_tilde(q - 0.5, t);
    return out;
  }
  // J~ recurrence: J~_{nu+1} = (2 nu J~_nu - J~_{nu-1}) / t^2
  const double c = std::sqrt(2.0 / std::numbers::pi);
  out[0] = c * std::cos(t);
  if (count > 1) out[1] = c * std::sin(t) / t;
  const double inv_t2 = 1.0 / (t * t);
  for (int q = 2; q < count; ++q) out[q] = (2.0 * (q - 1.5) * out[q - 1] - out[q - 2]) * inv_t2;
  return out;
}

/// C_k^lambda(w) by the three-term recurrence, lambda > 0.
inline double gegenbauer(int k, double lambda, double w) {
  if (k < 0) throw domain_error("Gegenbauer degree must be >= 0");
  if (!(lambda > 0.0))
    throw domain_error("gegenbauer requires lambda > 0; use gegenbauer_lambda0_scaled for the lambda -> 0 limit");
  if (k == 0) return 1.0;
  double c0 = 1.0, c1 = 2.0 * lambda * w;
  for (int n = 2; n <= k; ++n) {
    const double c2 = (2.0 * w * (n + lambda - 1.0) * c1 - (n + 2.0 * lambda - 2.0) * c0) / n;
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

/// C_0^lambda(w), ..., C_{count-1}^lambda(w).
inline std::vector<double> gegenbauer_sequence(int count, double lambda, double w) {
  if (!(lambda > 0.0)) throw domain_error("gegenbauer_sequence requires lambda > 0");
  std::vector<double> c(std::max(count, 0));
  if (count > 0) c[0] = 1.0;
  if (count > 1) c[1] = 2.0 * lambda * w;
  for (int n = 2; n < count; ++n)
    c[n] = (2.0 * w * (n + lambda - 1.0) * c[n - 1] - (n + 2.0 * lambda - 2.0) * c[n - 2]) / n;
  return c;
}

/// Chebyshev T_n(w).
inline double chebyshev_t(int n, double w) {
  if (n < 0) throw domain_error("Chebyshev degree must be >= 0");
  if (n == 0) return 1.0;
  double t0 = 1.0, t1 = w;
  for (int k = 2; k <= n; ++k) {
    const double t2 = 2.0 * w * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

/// lim_{lambda -> 0} C_n^lambda(cos theta) / lambda = (2/n) cos(n theta), n >= 1.
inline double gegenbauer_lambda0_scaled(int n, double theta) {
  if (n < 1) throw domain_error("lambda -> 0 Gegenbauer limit requires n >= 1");
  return 2.0 / n * std::cos(n * theta);
}

/// Same limit expressed in w = cos(theta): (2/n) T_n(w). Polynomial in w.
inline double gegenbauer_lambda0_scaled_w(int n, double w) {
  if (n < 1) throw domain_error("lambda -> 0 Gegenbauer limit requires n >= 1");
  return 2.0 / n * chebyshev_t(n, w);
}

/// Generalised Laguerre L_j^a(x) by the forward recurrence. Complex x is allowed.
template <typename T>
T laguerre(int j, double a, T x) {
  if (j < 0) throw domain_error("Laguerre degree must be >= 0");
  if (!(a > -1.0)) throw domain_error("Laguerre parameter must exceed -1");
  T l0 = T(1.0);
  if (j == 0) return l0;
  T l1 = T(1.0 + a) - x;
  for (int k = 1; k < j; ++k) {
    const T l2 = ((T(2.0 * k + 1.0 + a) - x) * l1 - T(k + a) * l0) / T(k + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

inline double laguerre(int j, double a, double x) { return laguerre<double>(j, a, x); }

/// Monomial coefficients of L_j^a: L_j^a(x) = sum_i c_i x^i.
inline std::vector<double> laguerre_coefficients(int j, double a) {
  if (j < 0) throw domain_error("Laguerre degree must be >= 0");
  std::vector<double> c(j + 1);
  // c_i = (-1)^i binom(j+a, j-i) / i!
  for (int i = 0; i <= j; ++i) {
    double binom = 1.0;  // binom(j+a, j-i) = prod_{r=1}^{j-i} (a + i + r) / r
    for (int r = 1; r <= j - i; ++r) binom *= (a + i + r) / r;
    double fact = 1.0;
    for (int r = 2; r <= i; ++r) fact *= r;
    c[i] = ((i & 1) ? -1.0 : 1.0) * binom / fact;
  }
  return c;
}

}  // namespace fraccft::special

#endif  // FRACCFT_SPECIAL_FUNCTIONS_HPP
