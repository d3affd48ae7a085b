#ifndef FRACCFT_KERNEL_HPP
#define FRACCFT_KERNEL_HPP

// Kernel K_{alpha,beta}(x, y) of the fractional Clifford-Fourier transform
//
//   K = (A + B + (x ^ y) C) exp((i/2) cot(alpha) (|x|^2 + |y|^2))
//
// evaluated three ways: the Gegenbauer-Bessel series (any m >= 2), the closed
// form for m = 2, and the finite Bessel sums for even m > 2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "clifford.hpp"
#include "errors.hpp"
#include "special_functions.hpp"

namespace fraccft {

inline constexpr complex I{0.0, 1.0};

namespace detail {

inline bool exceptional_angle(double alpha) { return std::abs(std::sin(alpha)) < 1e-12; }

inline double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

inline complex ipow(complex base, int e) {
  complex r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

/// i^{-k}
inline complex i_pow_neg(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return 1.0;
    case 1: return -I;
    case 2: return -1.0;
    default: return I;
  }
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace detail

struct KernelParams {
  double alpha = std::numbers::pi / 2;
  double beta = std::numbers::pi / 2;
  int m = 2;
  /// Series truncation order; 0 selects max(40, ceil(e |z~|) + 20).
  int truncation = 0;
  /// |beta| below this uses the plane-wave (beta = 0) expression in the even closed form.
  double beta_small_threshold = 0.0;

  KernelParams() = default;
  KernelParams(double a, double b, int dim, int trunc = 0, double small = 0.0)
      : alpha(a), beta(b), m(dim), truncation(trunc), beta_small_threshold(small) {
    validate();
  }

  /// (m - 2) / 2; derived, never stored.
  double lambda() const { return 0.5 * (m - 2); }

  void validate() const {
    if (m < 2 || m > max_dimension) throw domain_error("kernel dimension must lie in 2..8");
    if (!std::isfinite(alpha) || std::abs(alpha) > std::numbers::pi + 1e-12)
      throw domain_error("alpha must lie in [-pi, pi]");
    if (detail::exceptional_angle(alpha))
      throw unsupported("alpha in {0, +-pi} has no integral kernel; use exceptional_operator");
    if (!std::isfinite(beta) || std::abs(beta) > std::numbers::pi + 1e-12)
      throw domain_error("beta must lie in [-pi, pi]");
    if (truncation < 0) throw domain_error("truncation must be >= 0");
  }
};

/// Scalar invariants of a point pair consumed by every kernel formula.
struct GeometricInvariants {
  double s = 0.0;        ///< <x, y>
  double t = 0.0;        ///< |x ^ y|
  double w = 0.0;        ///< <xi, eta>, 0 when either vector vanishes
  double z_tilde = 0.0;  ///< |x||y| / sin(alpha)
  double s_star = 0.0;   ///< sin(beta)/sin(alpha) * s
  double t_star = 0.0;   ///< sin(beta)/sin(alpha) * t
  double norm_x = 0.0;
  double norm_y = 0.0;
};

inline GeometricInvariants invariants(const Vector& x, const Vector& y, const KernelParams& p) {
  require_same_dimension(x, y);
  if (x.dim() != p.m)
    throw dimension_mismatch("vectors have dimension " + std::to_string(x.dim()) + ", kernel has m = " +
                             std::to_string(p.m));
  GeometricInvariants g;
  g.norm_x = x.norm();
  g.norm_y = y.norm();
  g.s = inner_vectors(x, y);
  g.t = wedge_norm(x, y);
  const double z = g.norm_x * g.norm_y;
  g.w = z > 0.0 ? std::clamp(g.s / z, -1.0, 1.0) : 0.0;
  const double sa = std::sin(p.alpha);
  g.z_tilde = z / sa;
  const double ratio = std::sin(p.beta) / sa;
  g.s_star = ratio * g.s;
  g.t_star = ratio * g.t;
  return g;
}

/// exp((i/2) cot(alpha) (|x|^2 + |y|^2))
inline complex gaussian_phase(double alpha, double norm2_sum) {
  return std::exp(0.5 * I * (std::cos(alpha) / std::sin(alpha)) * norm2_sum);
}

/// A kernel value; only grades 0 and 2 are populated.
struct KernelValue {
  complex scalar_part;
  Multivector bivector_part;
  /// Magnitude of the last three series terms (series route only).
  double tail_estimate = 0.0;
  /// Set for odd m, where no bounds are available.
  bool unvalidated = false;

  Multivector assembled() const {
    Multivector r = bivector_part;
    r[0] += scalar_part;
    return r;
  }
};

inline int default_truncation(double z_tilde) {
  return std::max(40, static_cast<int>(std::ceil(std::numbers::e * std::abs(z_tilde))) + 20);
}

/// Series functions A_lambda, B_lambda, C_lambda at (w, z~).
struct SeriesCoefficients {
  complex a;
  complex b;
  complex c;
  double tail = 0.0;
  int terms = 0;
};

/// Evaluate A_lambda, B_lambda, C_lambda by their Gegenbauer-Bessel series,
/// summing k = 0..order. lambda = 0 (m = 2) uses the lambda -> 0 limits.
inline SeriesCoefficients series_coefficients(double lambda, double w, double z_tilde, double alpha, double beta,
                                              int order) {
  if (lambda < 0.0 || !special::detail::is_integer(2.0 * lambda))
    throw domain_error("series coefficients need lambda = (m-2)/2 with m >= 2");
  if (order < 1) throw domain_error("series order must be >= 1");
  const double sin_a = std::sin(alpha);
  const double az = std::abs(z_tilde);
  const double sgn = z_tilde < 0.0 ? -1.0 : 1.0;
  const int count = order + 1;

  // jk[k] = z~^{-lambda} J_{k+lambda}(z~) = z~^k J~_{k+lambda}(|z~|);
  // jc[k] = z~^{-lambda-1} J_{k+lambda}(z~) = z~^{k-1} J~_{k+lambda}(|z~|), k >= 1.
  std::vector<double> jk(count), jc(count);
  if (az < 1.0) {
    double zp = 1.0, zp_prev = 1.0;  // z~^k, z~^{k-1}
    for (int k = 0; k < count; ++k) {
      const double jt = special::bessel_j_tilde(k + lambda, az);
      jk[k] = zp * jt;
      if (k >= 1) jc[k] = zp_prev * jt;
      if (k >= 1) zp_prev *= z_tilde;
      zp *= z_tilde;
    }
  } else {
    const auto seq = special::bessel_j_sequence(lambda, count, az);
    const double scale_a = std::pow(az, -lambda), scale_c = scale_a / az;
    double sk = 1.0;  // sgn^k
    for (int k = 0; k < count; ++k) {
      jk[k] = sk * scale_a * seq[k];
      if (k >= 1) jc[k] = sk * sgn * scale_c * seq[k];
      sk *= sgn;
    }
  }

  SeriesCoefficients out;
  out.terms = count;
  std::vector<double> tail_terms;
  tail_terms.reserve(count);

  if (lambda == 0.0) {
    const auto cheb_u = special::gegenbauer_sequence(count, 1.0, w);  // C_{k-1}^1 = U_{k-1}
    for (int k = 0; k < count; ++k) {
      const complex ik = detail::i_pow_neg(k);
      const complex e1 = std::exp(I * beta * double(k)), e2 = std::exp(-I * beta * double(k));
      complex tb, tc;
      if (k == 0) {
        tb = jk[0];
      } else {
        // lim lambda Gamma(lambda) (k + lambda) C_k^lambda / 2 = (k/2) lim C_k^lambda / lambda
        tb = ik * (e1 + e2) * (0.5 * k * special::gegenbauer_lambda0_scaled_w(k, w)) * jk[k];
        tc = ik * (e1 - e2) * jc[k] * cheb_u[k - 1] / sin_a;
      }
      out.b += tb;
      out.c += tc;
      tail_terms.push_back(std::abs(tb) + std::abs(tc));
    }
  } else {
    const double pref_a = -std::pow(2.0, lambda - 1.0) * std::tgamma(lambda + 1.0);
    const double pref_b = std::pow(2.0, lambda - 1.0) * std::tgamma(lambda);
    const double pref_c = std::pow(2.0, lambda) * std::tgamma(lambda + 1.0) / sin_a;
    const auto geg = special::gegenbauer_sequence(count, lambda, w);
    const auto geg1 = special::gegenbauer_sequence(count, lambda + 1.0, w);
    for (int k = 0; k < count; ++k) {
      const complex ik = detail::i_pow_neg(k);
      const complex e1 = std::exp(I * beta * (k + 2.0 * lambda)), e2 = std::exp(-I * beta * double(k));
      const complex ta = pref_a * ik * (e1 - e2) * jk[k] * geg[k];
      const complex tb = pref_b * (k + lambda) * ik * (e1 + e2) * jk[k] * geg[k];
      const complex tc = k >= 1 ? pref_c * ik * (e1 - e2) * jc[k] * geg1[k - 1] : complex{};
      out.a += ta;
      out.b += tb;
      out.c += tc;
      tail_terms.push_back(std::abs(ta) + std::abs(tb) + std::abs(tc));
    }
  }
  for (std::size_t i = tail_terms.size() >= 3 ? tail_terms.size() - 3 : 0; i < tail_terms.size(); ++i)
    out.tail += tail_terms[i];
  return out;
}

/// Kernel by the Gegenbauer-Bessel series.
inline KernelValue kernel_series(const Vector& x, const Vector& y, const KernelParams& p) {
  p.validate();
  const auto g = invariants(x, y, p);
  const int order = p.truncation > 0 ? p.truncation : default_truncation(g.z_tilde);
  const auto abc = series_coefficients(p.lambda(), g.w, g.z_tilde, p.alpha, p.beta, order);
  const complex phase = gaussian_phase(p.alpha, g.norm_x * g.norm_x + g.norm_y * g.norm_y);
  KernelValue v{(abc.a + abc.b) * phase, wedge_vectors(x, y) * (abc.c * phase)};
  v.tail_estimate = abc.tail;
  v.unvalidated = (p.m % 2) != 0;
  return v;
}

/// Closed form for m = 2:
/// (cos(t sb/sa) + (x ^ y) sin(t sb/sa)/t) exp(-i <x,y> cos(beta)/sa) * phase.
inline KernelValue kernel_closed_m2(const Vector& x, const Vector& y, const KernelParams& p) {
  p.validate();
  if (p.m != 2) throw unsupported("kernel_closed_m2 requires m = 2");
  const auto g = invariants(x, y, p);
  const double sa = std::sin(p.alpha);
  const double ratio = std::sin(p.beta) / sa;
  const double u = g.t * ratio;
  const double sinc = std::abs(u) < 1e-4 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
  const complex common = std::exp(-I * g.s * std::cos(p.beta) / sa) *
                         gaussian_phase(p.alpha, g.norm_x * g.norm_x + g.norm_y * g.norm_y);
  return KernelValue{std::cos(u) * common, wedge_vectors(x, y) * (ratio * sinc * common)};
}

/// Plane-wave kernel of the fractional Fourier transform,
/// exp(-i <x,y>/sin(alpha)) exp((i/2) cot(alpha) (|x|^2 + |y|^2)).
inline complex kernel_fractional_fourier(const Vector& x, const Vector& y, double alpha) {
  require_same_dimension(x, y);
  if (detail::exceptional_angle(alpha)) throw unsupported("fractional Fourier kernel undefined for sin(alpha) = 0");
  return std::exp(-I * inner_vectors(x, y) / std::sin(alpha)) *
         gaussian_phase(alpha, x.norm_squared() + y.norm_squared());
}

/// Closed form for even m >= 4 via the resummed finite Bessel sums. The factor
/// cos(beta)^{(m-2)/2} is distributed into each summand so that tan(beta) never
/// appears, and exp(-i s* cot beta) is evaluated as exp(-i s cos(beta)/sin(alpha)).
inline KernelValue kernel_closed_even(const Vector& x, const Vector& y, const KernelParams& p) {
  p.validate();
  if (p.m % 2 != 0) throw unsupported("closed form requires even m");
  if (p.m < 4) throw unsupported("kernel_closed_even requires m >= 4 (use kernel_closed_m2)");
  const auto g = invariants(x, y, p);
  const double sa = std::sin(p.alpha);
  const complex phase = gaussian_phase(p.alpha, g.norm_x * g.norm_x + g.norm_y * g.norm_y);
  if (p.beta_small_threshold > 0.0 && std::abs(p.beta) < p.beta_small_threshold)
    return KernelValue{kernel_fractional_fourier(x, y, p.alpha), Multivector(p.m)};

  const int lam = p.m / 2 - 1;
  const double sb = std::sin(p.beta), cb = std::cos(p.beta);
  const double ss = g.s_star, ts = g.t_star;

  // J~_{p-1/2}(t*) and J~_{p+1/2}(t*), p = 0..lam
  const auto jt = special::bessel_j_tilde_half_sequence(lam + 2, ts);
  const std::vector<double> jt_minus(jt.begin(), jt.end() - 1), jt_plus(jt.begin() + 1, jt.end());

  // sum_{p=0}^{n} sum_{j=0}^{min(p, n-p)} n!/((n-p-j)! j! (p-j)!) i^{p+j} sb^{p+j+extra_sin}
  //   cb^{n-p-j} 2^{-j} s*^{p-j} J~(p)
  auto resummed = [&](int n, int extra_sin, const std::vector<double>& jt) {
    complex sum;
    const double nf = detail::factorial(n);
    for (int q = 0; q <= n; ++q) {
      for (int j = 0; j <= std::min(q, n - q); ++j) {
        const double coeff = nf / (detail::factorial(n - q - j) * detail::factorial(j) * detail::factorial(q - j));
        const double mag = coeff * detail::ipow(sb, q + j + extra_sin) * detail::ipow(cb, n - q - j) *
                           std::ldexp(1.0, -j) * detail::ipow(ss, q - j) * jt[q];
        sum += detail::ipow(I, q + j) * mag;
      }
    }
    return sum;
  };

  const complex a_sum = -I * double(lam) * resummed(lam - 1, 1, jt_plus);
  const complex b_sum = resummed(lam, 0, jt_minus);
  const complex c_sum = (sb / sa) * resummed(lam, 0, jt_plus);

  const complex pre = std::sqrt(std::numbers::pi / 2.0) * std::exp(I * p.beta * double(lam)) *
                      std::exp(-I * g.s * cb / sa) * phase;
  return KernelValue{pre * (a_sum + b_sum), wedge_vectors(x, y) * (pre * c_sum)};
}

/// Kernel K_- of the classical Clifford-Fourier transform, even m >= 4:
/// (-1)^{m/2} (pi/2)^{1/2} (A* + B* + (x ^ y) C*)(s, t).
inline KernelValue kernel_cft_reference(const Vector& x, const Vector& y, int m) {
  if (m % 2 != 0 || m < 4) throw unsupported("classical kernel reference requires even m >= 4");
  require_same_dimension(x, y);
  if (x.dim() != m) throw dimension_mismatch("vector dimension does not match m");
  const double s = inner_vectors(x, y), t = wedge_norm(x, y);
  const int half = m / 2;
  const double gm = std::tgamma(0.5 * m);
  double a = 0.0, b = 0.0, c = 0.0;
  for (int l = 0; l <= (m - 3) / 4; ++l)
    a += detail::ipow(s, half - 2 - 2 * l) / (std::ldexp(1.0, l) * detail::factorial(l)) * gm /
         std::tgamma(0.5 * m - 2 * l - 1) * special::bessel_j_tilde(0.5 * (m - 2 * l - 3), t);
  for (int l = 0; l <= (m - 2) / 4; ++l) {
    const double common =
        detail::ipow(s, half - 1 - 2 * l) / (std::ldexp(1.0, l) * detail::factorial(l)) * gm / std::tgamma(0.5 * m - 2 * l);
    b -= common * special::bessel_j_tilde(0.5 * (m - 2 * l - 3), t);
    c -= common * special::bessel_j_tilde(0.5 * (m - 2 * l - 1), t);
  }
  const double pre = (half % 2 == 0 ? 1.0 : -1.0) * std::sqrt(std::numbers::pi / 2.0);
  return KernelValue{pre * (a + b), wedge_vectors(x, y) * complex(pre * c)};
}

enum class KernelRoute { automatic, series, closed };

/// Dispatch: closed form where one exists (m = 2 or even m >= 4), series otherwise.
inline KernelValue evaluate_kernel(const Vector& x, const Vector& y, const KernelParams& p,
                                   KernelRoute route = KernelRoute::automatic) {
  switch (route) {
    case KernelRoute::series: return kernel_series(x, y, p);
    case KernelRoute::closed:
      if (p.m % 2 != 0) throw unsupported("closed form requires even m");
      return p.m == 2 ? kernel_closed_m2(x, y, p) : kernel_closed_even(x, y, p);
    case KernelRoute::automatic:
    default:
      if (p.m % 2 != 0) return kernel_series(x, y, p);
      return p.m == 2 ? kernel_closed_m2(x, y, p) : kernel_closed_even(x, y, p);
  }
}

/// exp(i beta Gamma_y) applied to (|x||y|)^k C_k^lambda(<xi, eta>), m >= 3.
inline Multivector lemma_gamma_action(int k, const Vector& x, const Vector& y, double beta) {
  require_same_dimension(x, y);
  const int m = x.dim();
  if (m < 3) throw unsupported("lemma_gamma_action requires m >= 3 (lambda > 0)");
  if (k < 0) throw domain_error("degree k must be >= 0");
  const double lambda = 0.5 * (m - 2);
  const double z = x.norm() * y.norm();
  if (z == 0.0) throw domain_error("lemma_gamma_action requires nonzero vectors");
  const double w = std::clamp(inner_vectors(x, y) / z, -1.0, 1.0);
  const complex e1 = std::exp(I * beta * double(k + m - 2)), e2 = std::exp(-I * beta * double(k));
  const double pk = detail::ipow(z, k) * special::gegenbauer(k, lambda, w);
  const complex scalar = 0.5 * (e1 + e2) * pk - lambda / (2.0 * (k + lambda)) * (e1 - e2) * pk;
  Multivector r(m);
  if (k >= 1)
    r = wedge_vectors(x, y) *
        (lambda / (k + lambda) * (e1 - e2) * detail::ipow(z, k - 1) * special::gegenbauer(k - 1, lambda + 1.0, w));
  r[0] += scalar;
  return r;
}

/// Residuals of the lambda-recursions between consecutive series functions,
/// e.g. B_lambda = (i e^{i beta} / z~) d/dw B_{lambda-1}.  NaN marks an identity
/// that does not apply at this level (A needs lambda >= 2).
struct RecursionResidual {
  double a = std::numeric_limits<double>::quiet_NaN();
  double b = 0.0;
  double c = 0.0;
  double max = 0.0;
};

/// Residuals at fixed (w, z~); derivative in w by the five-point central stencil.
/// Each residual is |lhs - rhs| / max(1, |lhs|).
inline RecursionResidual recursion_check(int lambda_level, double w, double z_tilde, double alpha, double beta,
                                         double h = 1e-4, int order = 0) {
  if (lambda_level < 1 || lambda_level > 3) throw domain_error("lambda level must lie in 1..3");
  if (detail::exceptional_angle(alpha)) throw unsupported("exceptional alpha");
  if (z_tilde == 0.0) throw domain_error("recursion check needs z~ != 0");
  const int k = order > 0 ? order : default_truncation(z_tilde);
  const double lam = lambda_level;
  auto at = [&](double l, double ww) { return series_coefficients(l, ww, z_tilde, alpha, beta, k); };
  const auto hi = at(lam, w);
  const auto p2 = at(lam - 1, w + 2 * h), p1 = at(lam - 1, w + h);
  const auto m1 = at(lam - 1, w - h), m2 = at(lam - 1, w - 2 * h);
  auto d = [&](complex SeriesCoefficients::*f) {
    return (-(p2.*f) + 8.0 * (p1.*f) - 8.0 * (m1.*f) + (m2.*f)) / (12.0 * h);
  };
  const complex factor = I * std::exp(I * beta) / z_tilde;
  auto rel = [](complex lhs, complex rhs) { return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)); };
  RecursionResidual r;
  r.b = rel(hi.b, factor * d(&SeriesCoefficients::b));
  r.c = rel(hi.c, factor * d(&SeriesCoefficients::c));
  r.max = std::max(r.b, r.c);
  if (lambda_level >= 2) {
    r.a = rel(hi.a, lam / (lam - 1.0) * factor * d(&SeriesCoefficients::a));
    r.max = std::max(r.max, r.a);
  }
  return r;
}

inline RecursionResidual recursion_check(int lambda_level, const Vector& x, const Vector& y, const KernelParams& p,
                                         double h = 1e-4) {
  const auto g = invariants(x, y, p);
  return recursion_check(lambda_level, g.w, g.z_tilde, p.alpha, p.beta, h, p.truncation);
}

}  // namespace fraccft

#endif  // FRACCFT_KERNEL_HPP
