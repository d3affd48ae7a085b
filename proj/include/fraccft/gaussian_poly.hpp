#ifndef FRACCFT_GAUSSIAN_POLY_HPP
#define FRACCFT_GAUSSIAN_POLY_HPP

// Clifford-valued polynomials, optionally times the Gaussian exp(-|x|^2/2),
// with the Dirac, Laplace, Euler, Gamma and Hamilton operators applied exactly
// on coefficients.

#include <cmath>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "clifford.hpp"
#include "errors.hpp"
#include "special_functions.hpp"

namespace fraccft {

using Exponents = std::vector<int>;

class CliffordPolynomial {
 public:
  using TermMap = std::map<Exponents, Multivector>;

  CliffordPolynomial() : CliffordPolynomial(1) {}
  explicit CliffordPolynomial(int m) : m_(AlgebraSignature(m).m) {}

  static CliffordPolynomial constant(const Multivector& c) {
    CliffordPolynomial p(c.dim());
    p.add_term(Exponents(c.dim(), 0), c);
    return p;
  }
  static CliffordPolynomial constant(int m, complex c) { return constant(Multivector::scalar(m, c)); }
  /// The coordinate x_j (0-based j) with scalar coefficient.
  static CliffordPolynomial coordinate(int m, int j) {
    CliffordPolynomial p(m);
    Exponents e(m, 0);
    e.at(j) = 1;
    p.add_term(e, Multivector::scalar(m, 1.0));
    return p;
  }
  /// The vector variable x = sum_j e_j x_j.
  static CliffordPolynomial vector_variable(int m) {
    CliffordPolynomial p(m);
    for (int j = 0; j < m; ++j) {
      Exponents e(m, 0);
      e[j] = 1;
      p.add_term(e, Multivector::basis_vector(m, j + 1));
    }
    return p;
  }
  /// |x|^2
  static CliffordPolynomial norm_squared(int m) {
    CliffordPolynomial p(m);
    for (int j = 0; j < m; ++j) {
      Exponents e(m, 0);
      e[j] = 2;
      p.add_term(e, Multivector::scalar(m, 1.0));
    }
    return p;
  }

  int dim() const { return m_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(const Exponents& e, const Multivector& c) {
    if (static_cast<int>(e.size()) != m_ || c.dim() != m_) throw dimension_mismatch("term dimension mismatch");
    for (int v : e)
      if (v < 0) throw domain_error("negative exponent");
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) it->second += c;
  }

  /// Largest total degree among the stored terms (-1 for the zero polynomial).
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total(e));
    return d;
  }
  /// True if all terms with a coefficient above `tol` have total degree k.
  bool is_homogeneous(int k, double tol = 0.0) const {
    for (const auto& [e, c] : terms_)
      if (c.max_abs() > tol && total(e) != k) return false;
    return true;
  }

  /// Largest coefficient modulus.
  double max_abs() const {
    double r = 0.0;
    for (const auto& [e, c] : terms_) r = std::max(r, c.max_abs());
    return r;
  }

  /// Drop terms whose coefficients are all at most `tol` in modulus.
  CliffordPolynomial& prune(double tol = 0.0) {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->second.max_abs() <= tol ? terms_.erase(it) : std::next(it);
    return *this;
  }

  Multivector evaluate(const Vector& x) const {
    if (x.dim() != m_) throw dimension_mismatch("evaluation point has wrong dimension");
    Multivector r(m_);
    for (const auto& [e, c] : terms_) {
      double mono = 1.0;
      for (int j = 0; j < m_; ++j)
        for (int p = 0; p < e[j]; ++p) mono *= x[j];
      r.add_scaled(c, mono);
    }
    return r;
  }

  /// d/dx_j, 0-based j.
  CliffordPolynomial partial(int j) const {
    CliffordPolynomial r(m_);
    for (const auto& [e, c] : terms_) {
      if (e.at(j) == 0) continue;
      Exponents f = e;
      --f[j];
      r.add_term(f, static_cast<double>(e[j]) * c);
    }
    return r;
  }

  /// x_j * p, 0-based j.
  CliffordPolynomial times_coordinate(int j) const {
    CliffordPolynomial r(m_);
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      ++f.at(j);
      r.add_term(f, c);
    }
    return r;
  }

  CliffordPolynomial& operator+=(const CliffordPolynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  CliffordPolynomial& operator-=(const CliffordPolynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  CliffordPolynomial& operator*=(complex a) {
    for (auto& [e, c] : terms_) c *= a;
    return *this;
  }

  friend CliffordPolynomial operator+(CliffordPolynomial a, const CliffordPolynomial& b) { return a += b; }
  friend CliffordPolynomial operator-(CliffordPolynomial a, const CliffordPolynomial& b) { return a -= b; }
  friend CliffordPolynomial operator-(CliffordPolynomial a) { return a *= -1.0; }
  friend CliffordPolynomial operator*(complex s, CliffordPolynomial a) { return a *= s; }
  friend CliffordPolynomial operator*(double s, CliffordPolynomial a) { return a *= s; }

  /// Clifford product, coefficients multiplied in order (non-commutative).
  friend CliffordPolynomial operator*(const CliffordPolynomial& a, const CliffordPolynomial& b) {
    a.check(b);
    CliffordPolynomial r(a.m_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.m_);
        for (int j = 0; j < a.m_; ++j) e[j] = ea[j] + eb[j];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend CliffordPolynomial operator*(const Multivector& c, const CliffordPolynomial& p) {
    return CliffordPolynomial::constant(c) * p;
  }
  friend CliffordPolynomial operator*(const CliffordPolynomial& p, const Multivector& c) {
    return p * CliffordPolynomial::constant(c);
  }

  /// Largest coefficientwise difference, treating missing terms as zero.
  friend double max_difference(const CliffordPolynomial& a, const CliffordPolynomial& b) {
    return (a - b).max_abs();
  }

 private:
  static int total(const Exponents& e) {
    int s = 0;
    for (int v : e) s += v;
    return s;
  }
  void check(const CliffordPolynomial& o) const {
    if (o.m_ != m_) throw dimension_mismatch("polynomials live in different dimensions");
  }

  int m_;
  TermMap terms_;
};

inline CliffordPolynomial pow(const CliffordPolynomial& p, int k) {
  if (k < 0) throw domain_error("negative power");
  CliffordPolynomial r = CliffordPolynomial::constant(p.dim(), 1.0);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

/// poly(x) * exp(-|x|^2 / 2)
struct GaussianPolynomial {
  CliffordPolynomial poly;

  GaussianPolynomial() = default;
  explicit GaussianPolynomial(CliffordPolynomial p) : poly(std::move(p)) {}

  int dim() const { return poly.dim(); }
  double max_abs() const { return poly.max_abs(); }
  Multivector evaluate(const Vector& x) const { return poly.evaluate(x) *= std::exp(-0.5 * x.norm_squared()); }

  friend GaussianPolynomial operator+(const GaussianPolynomial& a, const GaussianPolynomial& b) {
    return GaussianPolynomial(a.poly + b.poly);
  }
  friend GaussianPolynomial operator-(const GaussianPolynomial& a, const GaussianPolynomial& b) {
    return GaussianPolynomial(a.poly - b.poly);
  }
  friend GaussianPolynomial operator*(complex s, const GaussianPolynomial& a) { return GaussianPolynomial(s * a.poly); }
  friend double max_difference(const GaussianPolynomial& a, const GaussianPolynomial& b) {
    return max_difference(a.poly, b.poly);
  }
};

// ---- operators --------------------------------------------------------------

inline CliffordPolynomial partial(const CliffordPolynomial& f, int j) { return f.partial(j); }

/// d/dx_j (P G) = (dP/dx_j - x_j P) G
inline GaussianPolynomial partial(const GaussianPolynomial& f, int j) {
  return GaussianPolynomial(f.poly.partial(j) - f.poly.times_coordinate(j));
}

inline CliffordPolynomial times_coordinate(const CliffordPolynomial& f, int j) { return f.times_coordinate(j); }
inline GaussianPolynomial times_coordinate(const GaussianPolynomial& f, int j) {
  return GaussianPolynomial(f.poly.times_coordinate(j));
}

namespace detail {

template <typename F>
F zero_like(const F& f) {
  if constexpr (std::is_same_v<F, GaussianPolynomial>)
    return GaussianPolynomial(CliffordPolynomial(f.dim()));
  else
    return CliffordPolynomial(f.dim());
}

inline CliffordPolynomial& poly_of(CliffordPolynomial& f) { return f; }
inline CliffordPolynomial& poly_of(GaussianPolynomial& f) { return f.poly; }
inline const CliffordPolynomial& poly_of(const CliffordPolynomial& f) { return f; }
inline const CliffordPolynomial& poly_of(const GaussianPolynomial& f) { return f.poly; }

template <typename F>
F left_mul(const Multivector& c, const F& f) {
  F r = f;
  poly_of(r) = c * poly_of(f);
  return r;
}

template <typename F>
F right_mul(const F& f, const Multivector& c) {
  F r = f;
  poly_of(r) = poly_of(f) * c;
  return r;
}

template <typename F>
F add(F a, const F& b) {
  poly_of(a) += poly_of(b);
  return a;
}

template <typename F>
F scale(complex s, F a) {
  poly_of(a) *= s;
  return a;
}

}  // namespace detail

/// Dirac operator acting from the left: sum_j e_j d/dx_j f.
template <typename F>
F dirac_apply(const F& f) {
  F r = detail::zero_like(f);
  for (int j = 0; j < f.dim(); ++j)
    r = detail::add(r, detail::left_mul(Multivector::basis_vector(f.dim(), j + 1), partial(f, j)));
  return r;
}

/// Dirac operator acting from the right: sum_j (d/dx_j f) e_j.
template <typename F>
F dirac_apply_right(const F& f) {
  F r = detail::zero_like(f);
  for (int j = 0; j < f.dim(); ++j)
    r = detail::add(r, detail::right_mul(partial(f, j), Multivector::basis_vector(f.dim(), j + 1)));
  return r;
}

/// Left multiplication by the vector variable x.
template <typename F>
F x_left(const F& f) {
  F r = detail::zero_like(f);
  for (int j = 0; j < f.dim(); ++j)
    r = detail::add(r, detail::left_mul(Multivector::basis_vector(f.dim(), j + 1), times_coordinate(f, j)));
  return r;
}

/// Right multiplication by the vector variable x.
template <typename F>
F x_right(const F& f) {
  F r = detail::zero_like(f);
  for (int j = 0; j < f.dim(); ++j)
    r = detail::add(r, detail::right_mul(times_coordinate(f, j), Multivector::basis_vector(f.dim(), j + 1)));
  return r;
}

template <typename F>
F laplace_apply(const F& f) {
  F r = detail::zero_like(f);
  for (int j = 0; j < f.dim(); ++j) r = detail::add(r, partial(partial(f, j), j));
  return r;
}

/// E = sum_j x_j d/dx_j
template <typename F>
F euler_apply(const F& f) {
  F r = detail::zero_like(f);
  for (int j = 0; j < f.dim(); ++j) r = detail::add(r, times_coordinate(partial(f, j), j));
  return r;
}

/// Gamma = -sum_{j<k} e_j e_k (x_j d/dx_k - x_k d/dx_j)
template <typename F>
F gamma_apply(const F& f) {
  const int m = f.dim();
  F r = detail::zero_like(f);
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      const Multivector ejk = Multivector::basis_vector(m, j + 1) * Multivector::basis_vector(m, k + 1);
      F term = detail::add(times_coordinate(partial(f, k), j), detail::scale(-1.0, times_coordinate(partial(f, j), k)));
      r = detail::add(r, detail::left_mul(-1.0 * ejk, term));
    }
  return r;
}

/// H = (1/2)(-Delta + |x|^2 - m)
template <typename F>
F hamiltonian_apply(const F& f) {
  F r = detail::scale(-1.0, laplace_apply(f));
  for (int j = 0; j < f.dim(); ++j) r = detail::add(r, times_coordinate(times_coordinate(f, j), j));
  r = detail::add(r, detail::scale(-static_cast<double>(f.dim()), f));
  return detail::scale(0.5, r);
}

// ---- monogenics and the eigenbasis -------------------------------------------

/// (x1 - e1 e2 x2)^k and (x1 - e1 e2 x2)^k e1, both monogenic in any m >= 2.
inline std::pair<CliffordPolynomial, CliffordPolynomial> monogenic_m2(int k, int m = 2) {
  if (k < 0) throw domain_error("degree must be >= 0");
  if (m < 2) throw domain_error("monogenic_m2 needs m >= 2");
  const Multivector e12 = Multivector::blade(m, 0b11);
  const CliffordPolynomial base =
      CliffordPolynomial::coordinate(m, 0) - e12 * CliffordPolynomial::coordinate(m, 1);
  const CliffordPolynomial p = pow(base, k);
  return {p, p * Multivector::basis_vector(m, 1)};
}

/// M_k component of a harmonic homogeneous h of degree k: h + x d_x h / (m + 2k - 2).
inline CliffordPolynomial monogenic_project(const CliffordPolynomial& h, int k, double tol = 1e-12) {
  if (k < 0) throw domain_error("degree must be >= 0");
  const double scale = std::max(1.0, h.max_abs());
  if (!h.is_homogeneous(k, tol * scale)) throw domain_error("input is not homogeneous of degree " + std::to_string(k));
  if (laplace_apply(h).max_abs() > tol * scale) throw domain_error("input is not harmonic");
  const CliffordPolynomial dh = dirac_apply(h);
  if (dh.max_abs() <= tol * scale) return h;
  const double denom = h.dim() + 2.0 * k - 2.0;
  return (h + (1.0 / denom) * x_left(dh)).prune();
}

enum class Parity { even, odd };

inline std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

/// L_j^a(q) with q = |x|^2, as a polynomial in x.
inline CliffordPolynomial laguerre_radial(int m, int j, double a) {
  const auto coeffs = special::laguerre_coefficients(j, a);
  const CliffordPolynomial r2 = CliffordPolynomial::norm_squared(m);
  CliffordPolynomial out(m), power = CliffordPolynomial::constant(m, 1.0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out += coeffs[i] * power;
    if (i + 1 < coeffs.size()) power = power * r2;
  }
  return out;
}

/// psi_{2j,k}(x) = L_j^{m/2+k-1}(|x|^2) M_k e^{-|x|^2/2}
/// psi_{2j+1,k}(x) = L_j^{m/2+k}(|x|^2) x M_k e^{-|x|^2/2}
inline GaussianPolynomial psi_basis(Parity parity, int j, int k, const CliffordPolynomial& mk, double tol = 1e-12) {
  if (j < 0 || k < 0) throw domain_error("basis indices must be >= 0");
  const int m = mk.dim();
  const double scale = std::max(1.0, mk.max_abs());
  if (!mk.is_homogeneous(k, tol * scale)) throw domain_error("M_k is not homogeneous of degree " + std::to_string(k));
  if (dirac_apply(mk).max_abs() > tol * scale) throw domain_error("M_k is not monogenic");
  if (parity == Parity::even) return GaussianPolynomial(laguerre_radial(m, j, 0.5 * m + k - 1.0) * mk);
  return GaussianPolynomial(laguerre_radial(m, j, 0.5 * m + k) * x_left(mk));
}

/// Polynomial index (2j or 2j+1) of a basis element.
inline int basis_index(Parity parity, int j) { return parity == Parity::even ? 2 * j : 2 * j + 1; }

/// Eigenvalue of H on psi.
inline int hamiltonian_eigenvalue(Parity parity, int j, int k) { return basis_index(parity, j) + k; }

/// Eigenvalue of Gamma on psi.
inline int gamma_eigenvalue(Parity parity, int k, int m) { return parity == Parity::even ? -k : k + m - 1; }

/// (|x||y|)^k C_k^lambda(<xi, eta>) as a polynomial in y for fixed x.
inline CliffordPolynomial gegenbauer_zonal(int k, double lambda, const Vector& x) {
  if (k < 0 || lambda <= 0.0) throw domain_error("gegenbauer_zonal needs k >= 0 and lambda > 0");
  const int m = x.dim();
  CliffordPolynomial s(m);  // <x, y>
  for (int j = 0; j < m; ++j) s += x[j] * CliffordPolynomial::coordinate(m, j);
  const CliffordPolynomial r2 = CliffordPolynomial::norm_squared(m);
  const double x2 = x.norm_squared();
  CliffordPolynomial out(m);
  // C_k^lambda(w) = sum_n (-1)^n Gamma(k-n+lambda) / (Gamma(lambda) n! (k-2n)!) (2w)^{k-2n}
  for (int n = 0; 2 * n <= k; ++n) {
    const double c = (n % 2 ? -1.0 : 1.0) * std::exp(std::lgamma(k - n + lambda) - std::lgamma(lambda) -
                                                     std::lgamma(n + 1.0) - std::lgamma(k - 2.0 * n + 1.0)) *
                     std::ldexp(1.0, k - 2 * n) * std::pow(x2, n);
    out += c * (pow(s, k - 2 * n) * pow(r2, n));
  }
  return out;
}

// ---- serialization ---------------------------------------------------------

inline void to_json(nlohmann::json& j, const CliffordPolynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exps", e}, {"coeff", c}});
  j = {{"m", p.dim()}, {"terms", terms}};
}

inline void from_json(const nlohmann::json& j, CliffordPolynomial& p) {
  CliffordPolynomial r(j.at("m").get<int>());
  for (const auto& t : j.at("terms")) r.add_term(t.at("exps").get<Exponents>(), t.at("coeff").get<Multivector>());
  p = std::move(r);
}

inline void to_json(nlohmann::json& j, const GaussianPolynomial& g) { j = {{"gaussian", true}, {"poly", g.poly}}; }

inline void from_json(const nlohmann::json& j, GaussianPolynomial& g) {
  g = GaussianPolynomial(j.at("poly").get<CliffordPolynomial>());
}

}  // namespace fraccft

#endif  // FRACCFT_GAUSSIAN_POLY_HPP
