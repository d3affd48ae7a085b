#ifndef FRACCFT_TRANSFORM_HPP
#define FRACCFT_TRANSFORM_HPP

// The fractional Clifford-Fourier transform as a quadrature operator, its
// radial reduction on f0(|x|) M_k(x) and f0(|x|) x M_k(x), and the
// exceptional parameters alpha in {0, +-pi} acting on finite basis expansions.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "clifford.hpp"
#include "errors.hpp"
#include "gaussian_poly.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"
#include "special_functions.hpp"

namespace fraccft {

struct QuadratureSpec {
  double box_radius = 8.0;
  /// 0 selects the per-dimension default (160 for m = 2, 48 for m = 4, 24 otherwise).
  int nodes_per_axis = 0;
  /// 0 defers to FRACCLIFFT_THREADS, then hardware concurrency.
  int threads = 0;
  /// Also evaluate with ceil(1.5 n) nodes per axis and flag a change above this.
  double resolution_tolerance = 0.0;

  int resolved_nodes(int m) const {
    if (nodes_per_axis > 0) return nodes_per_axis;
    return m == 2 ? 160 : m == 4 ? 48 : 24;
  }
  void validate(int m) const {
    if (!(box_radius > 0.0)) throw domain_error("box radius must be positive");
    if (resolved_nodes(m) < 8) throw domain_error("at least 8 nodes per axis are required");
  }
  /// n^m
  std::size_t node_count(int m) const {
    std::size_t c = 1;
    for (int i = 0; i < m; ++i) c *= static_cast<std::size_t>(resolved_nodes(m));
    return c;
  }
};

/// Tensor-product Gauss-Legendre nodes on [-R, R]^m.
struct TensorGrid {
  std::vector<Vector> nodes;
  std::vector<double> weights;
};

inline TensorGrid tensor_grid(int m, int n, double R) {
  const auto g = gauss_legendre(n, -R, R);
  TensorGrid out;
  std::size_t total = 1;
  for (int i = 0; i < m; ++i) total *= static_cast<std::size_t>(n);
  out.nodes.reserve(total);
  out.weights.reserve(total);
  std::vector<int> idx(m, 0);
  for (std::size_t c = 0; c < total; ++c) {
    Vector x(m);
    double w = 1.0;
    for (int i = 0; i < m; ++i) {
      x[i] = g.nodes[idx[i]];
      w *= g.weights[idx[i]];
    }
    out.nodes.push_back(std::move(x));
    out.weights.push_back(w);
    for (int i = m - 1; i >= 0; --i) {
      if (++idx[i] < n) break;
      idx[i] = 0;
    }
  }
  return out;
}

/// (pi (1 - e^{-2 i alpha}))^{-m/2}, principal branch.
inline complex normalization_constant(double alpha, int m) {
  if (detail::exceptional_angle(alpha)) throw unsupported("normalization constant undefined for sin(alpha) = 0");
  const complex base = std::numbers::pi * (1.0 - std::exp(-2.0 * I * alpha));
  if (m % 2 == 0) return 1.0 / detail::ipow(base, m / 2);
  return std::pow(base, -0.5 * m);
}

// ---- eigenbasis --------------------------------------------------------------

/// Eigenvalue of F_{alpha,beta} on psi_{2j,k} (even) or psi_{2j+1,k} (odd):
/// exp(-i alpha (index + k)) exp(i beta gamma) with gamma the Gamma-eigenvalue.
inline complex eigenvalue(Parity parity, int j, int k, double alpha, double beta, int m) {
  return std::exp(-I * alpha * double(hamiltonian_eigenvalue(parity, j, k))) *
         std::exp(I * beta * double(gamma_eigenvalue(parity, k, m)));
}

struct BasisTerm {
  Parity parity = Parity::even;
  int j = 0;
  int k = 0;
  CliffordPolynomial mk;
  complex coefficient = 1.0;
};

/// Finite combination sum c psi; psi built exactly on construction.
class BasisExpansion {
 public:
  explicit BasisExpansion(int m) : m_(m) {}

  BasisExpansion& add(Parity parity, int j, int k, const CliffordPolynomial& mk, complex c = 1.0) {
    if (mk.dim() != m_) throw dimension_mismatch("basis term lives in another dimension");
    terms_.push_back({parity, j, k, mk, c});
    psi_.push_back(psi_basis(parity, j, k, mk));
    return *this;
  }

  int dim() const { return m_; }
  const std::vector<BasisTerm>& terms() const { return terms_; }
  const GaussianPolynomial& psi(std::size_t i) const { return psi_.at(i); }

  Multivector evaluate(const Vector& x) const {
    Multivector r(m_);
    for (std::size_t i = 0; i < terms_.size(); ++i) r.add_scaled(psi_[i].poly.evaluate(x), terms_[i].coefficient);
    return r *= std::exp(-0.5 * x.norm_squared());
  }

  GaussianPolynomial as_polynomial() const {
    CliffordPolynomial p(m_);
    for (std::size_t i = 0; i < terms_.size(); ++i) p += terms_[i].coefficient * psi_[i].poly;
    return GaussianPolynomial(p);
  }

  /// F_{alpha,beta} applied term by term through the eigenvalues.
  Multivector transform_exact(double alpha, double beta, const Vector& y) const {
    Multivector r(m_);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      r += (t.coefficient * eigenvalue(t.parity, t.j, t.k, alpha, beta, m_)) * psi_[i].evaluate(y);
    }
    return r;
  }

 private:
  int m_;
  std::vector<BasisTerm> terms_;
  std::vector<GaussianPolynomial> psi_;
};

/// A function to transform: a callable, optionally backed by an exact
/// Gaussian polynomial or a basis expansion.
struct TargetFunction {
  int m = 2;
  std::function<Multivector(const Vector&)> eval;
  std::optional<BasisExpansion> basis;

  static TargetFunction from_polynomial(const GaussianPolynomial& g) {
    return {g.dim(), [g](const Vector& x) { return g.evaluate(x); }, std::nullopt};
  }
  static TargetFunction from_basis(const BasisExpansion& b) {
    return {b.dim(), [b](const Vector& x) { return b.evaluate(x); }, b};
  }
  /// The caller asserts f has Gaussian-class decay.
  static TargetFunction from_callable(int m, std::function<Multivector(const Vector&)> fn) {
    return {m, std::move(fn), std::nullopt};
  }
};

/// alpha in {0, +-pi}: alpha = 0 is exp(i beta Gamma) acting on eigenvalues,
/// alpha = +-pi additionally reflects the argument.
inline Multivector exceptional_operator(const BasisExpansion& f, double alpha, double beta, const Vector& y) {
  if (!detail::exceptional_angle(alpha)) throw domain_error("exceptional_operator needs alpha in {0, +-pi}");
  if (y.dim() != f.dim()) throw dimension_mismatch("output point has wrong dimension");
  const bool reflect = std::abs(alpha) > 1.0;
  const Vector arg = reflect ? -1.0 * y : y;
  Multivector r(f.dim());
  for (std::size_t i = 0; i < f.terms().size(); ++i) {
    const auto& t = f.terms()[i];
    const complex gamma_phase = std::exp(I * beta * double(gamma_eigenvalue(t.parity, t.k, f.dim())));
    r += (t.coefficient * gamma_phase) * f.psi(i).evaluate(arg);
  }
  return r;
}

// ---- quadrature transform ------------------------------------------------------

struct TransformResult {
  Multivector value;
  std::size_t nodes = 0;
  bool under_resolved = false;
  /// |value(1.5 n) - value(n)|, NaN when the check was not requested.
  double resolution_delta = std::numeric_limits<double>::quiet_NaN();
};

/// F_{alpha,beta}[f] at each output point, integrating over the first kernel
/// argument. Function values at the nodes are shared by all outputs; each
/// output point is summed sequentially, so results do not depend on threads.
inline std::vector<std::vector<Multivector>> fractional_cft_batch(const std::vector<TargetFunction>& fs,
                                                                  const KernelParams& p,
                                                                  const std::vector<Vector>& ys,
                                                                  const QuadratureSpec& q) {
  p.validate();
  q.validate(p.m);
  for (const auto& f : fs)
    if (f.m != p.m) throw dimension_mismatch("target function dimension differs from kernel m");
  for (const auto& y : ys)
    if (y.dim() != p.m) throw dimension_mismatch("output point has wrong dimension");

  const auto grid = tensor_grid(p.m, q.resolved_nodes(p.m), q.box_radius);
  const std::size_t nn = grid.nodes.size();
  std::vector<std::vector<Multivector>> fvals(fs.size(), std::vector<Multivector>(nn, Multivector(p.m)));
  parallel_for(fs.size() * nn, resolve_threads(q.threads), [&](std::size_t idx) {
    const std::size_t fi = idx / nn, ni = idx % nn;
    fvals[fi][ni] = grid.weights[ni] * fs[fi].eval(grid.nodes[ni]);
  });

  const complex norm = normalization_constant(p.alpha, p.m);
  std::vector<std::vector<Multivector>> out(fs.size(), std::vector<Multivector>(ys.size(), Multivector(p.m)));
  parallel_for(ys.size(), resolve_threads(q.threads), [&](std::size_t yi) {
    std::vector<Multivector> acc(fs.size(), Multivector(p.m));
    for (std::size_t ni = 0; ni < nn; ++ni) {
      const Multivector k = evaluate_kernel(grid.nodes[ni], ys[yi], p).assembled();
      for (std::size_t fi = 0; fi < fs.size(); ++fi) acc[fi].add_product(k, fvals[fi][ni]);
    }
    for (std::size_t fi = 0; fi < fs.size(); ++fi) out[fi][yi] = norm * acc[fi];
  });
  return out;
}

/// Single-point transform. Exceptional alpha is routed to exceptional_operator
/// and requires a basis-backed function.
inline TransformResult fractional_cft(const TargetFunction& f, const KernelParams& p, const Vector& y,
                                      const QuadratureSpec& q = {}) {
  if (detail::exceptional_angle(p.alpha)) {
    if (!f.basis) throw unsupported("exceptional alpha needs the function as a finite basis expansion");
    return TransformResult{exceptional_operator(*f.basis, p.alpha, p.beta, y), 0};
  }
  TransformResult r;
  r.value = fractional_cft_batch({f}, p, {y}, q)[0][0];
  r.nodes = q.node_count(p.m);
  if (q.resolution_tolerance > 0.0) {
    QuadratureSpec finer = q;
    finer.nodes_per_axis = static_cast<int>(std::ceil(1.5 * q.resolved_nodes(p.m)));
    const auto v = fractional_cft_batch({f}, p, {y}, finer)[0][0];
    r.resolution_delta = (v - r.value).norm();
    r.under_resolved = r.resolution_delta > q.resolution_tolerance;
  }
  return r;
}

// ---- radial reduction ---------------------------------------------------------

struct RadialSpec {
  double radius = 12.0;
  int panels = 60;
  int per_panel = 20;
};

/// F_{alpha,beta} of f0(|x|) M_k(x) (even) or f0(|x|) x M_k(x) (odd) at y, by one
/// radial integral against J~ of order k + lambda (even) or k + 1 + lambda (odd).
inline Multivector radial_transform(const std::function<complex(double)>& f0, const CliffordPolynomial& mk, int k,
                                    Parity parity, const KernelParams& p, const Vector& y,
                                    const RadialSpec& spec = {}) {
  p.validate();
  if (p.m % 2 != 0) throw unsupported("radial route requires even m");
  if (mk.dim() != p.m || y.dim() != p.m) throw dimension_mismatch("radial transform dimension mismatch");
  const double lambda = p.lambda();
  const double sa = std::sin(p.alpha), cot = std::cos(p.alpha) / sa;
  const double ny = y.norm();
  const int order_shift = parity == Parity::even ? 0 : 1;
  const int power = p.m + 2 * k - 1 + 2 * order_shift;

  const auto rule = composite_gauss_legendre(spec.per_panel, spec.panels, 0.0, spec.radius);
  complex integral;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = rule.nodes[i];
    integral += rule.weights[i] * std::pow(r, power) * f0(r) *
                special::bessel_j_tilde(k + order_shift + lambda, r * ny / sa) * std::exp(0.5 * I * cot * r * r);
  }
  integral *= std::pow(sa, -(k + order_shift));

  const complex cm = 2.0 / (std::tgamma(0.5 * p.m) * detail::ipow(1.0 - std::exp(-2.0 * I * p.alpha), p.m / 2));
  const double g = std::pow(2.0, lambda) * std::tgamma(lambda + 1.0);
  const complex coef = parity == Parity::even
                           ? g * detail::i_pow_neg(k) * std::exp(-I * p.beta * double(k))
                           : g * detail::i_pow_neg(k + 1) * std::exp(I * p.beta * double(k + p.m - 1));
  const complex scalar = cm * coef * integral * std::exp(0.5 * I * cot * ny * ny);
  Multivector angular = mk.evaluate(y);
  if (parity == Parity::odd) angular = Multivector::from_vector(y) * angular;
  return scalar * angular;
}

/// Radial profile of psi: L_j^{m/2+k-1}(r^2) e^{-r^2/2} (even) or L_j^{m/2+k}(r^2) e^{-r^2/2} (odd).
inline std::function<complex(double)> psi_radial_profile(Parity parity, int j, int k, int m) {
  const double a = 0.5 * m + k - (parity == Parity::even ? 1.0 : 0.0);
  return [=](double r) { return complex(special::laguerre(j, a, r * r) * std::exp(-0.5 * r * r)); };
}

// ---- Laguerre-Bessel integral --------------------------------------------------

/// int_0^inf x^{nu+1} e^{-b x^2} L_n^nu(x^2) J_nu(x y) dx
///   = 2^{-nu-1} b^{-nu-n-1} (b-1)^n y^nu e^{-y^2/(4b)} L_n^nu(y^2 / (4b(1-b))),
/// right side expanded in powers so that b = 1 is regular.
inline complex laguerre_hankel_rhs(int n, double nu, complex b, double y) {
  const auto c = special::laguerre_coefficients(n, nu);
  const complex u = y * y / (4.0 * b);
  complex sum, up = 1.0;
  for (int i = 0; i <= n; ++i) {
    sum += c[i] * (i % 2 ? -1.0 : 1.0) * detail::ipow(b - 1.0, n - i) * up;
    up *= u;
  }
  return std::pow(2.0, -nu - 1.0) * std::pow(b, -nu - n - 1.0) * std::pow(y, nu) * std::exp(-u) * sum;
}

inline complex laguerre_hankel_lhs(int n, double nu, complex b, double y, int panels = 80, int per_panel = 20) {
  if (!(b.real() > 0.0)) throw domain_error("the Laguerre-Bessel integral diverges unless Re b > 0");
  const double upper = std::sqrt(80.0 / b.real()) + 2.0;
  const auto rule = composite_gauss_legendre(per_panel, panels, 0.0, upper);
  complex sum;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    sum += rule.weights[i] * std::pow(x, nu + 1.0) * std::exp(-b * x * x) * special::laguerre(n, nu, x * x) *
           special::bessel_j(nu, x * y);
  }
  return sum;
}

/// |quadrature - closed form|
inline double laguerre_hankel_identity_check(int n, double nu, complex b, double y) {
  if (n < 0 || nu < 0.0) throw domain_error("identity needs n >= 0 and nu >= 0");
  if (!(y >= 0.0)) throw domain_error("identity needs y >= 0");
  return std::abs(laguerre_hankel_lhs(n, nu, b, y) - laguerre_hankel_rhs(n, nu, b, y));
}

}  // namespace fraccft

#endif  // FRACCFT_TRANSFORM_HPP
