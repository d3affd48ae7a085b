#ifndef FRACCFT_CLIFFORD_HPP
#define FRACCFT_CLIFFORD_HPP

// Dense complexified Clifford algebra Cl(0,m), 1 <= m <= 8.
//
// Basis blades are addressed by bitmask: bit i-1 set iff e_i is a factor.
// Blades are stored in canonical order e_{i1}...e_{ik}, i1 < ... < ik.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"

namespace fraccft {

using complex = std::complex<double>;
using blade_t = unsigned;

inline constexpr int max_dimension = 8;

struct AlgebraSignature {
  int m = 1;

  AlgebraSignature() = default;
  explicit AlgebraSignature(int dim) : m(dim) {
    if (dim < 1 || dim > max_dimension)
      throw domain_error("Clifford dimension must lie in 1..8, got " + std::to_string(dim));
  }
  std::size_t blade_count() const { return std::size_t{1} << m; }
  friend bool operator==(const AlgebraSignature&, const AlgebraSignature&) = default;
};

inline int blade_grade(blade_t b) { return std::popcount(b); }

/// Sign of e_A e_B after reordering into canonical form and contracting e_i^2 = -1.
inline int blade_product_sign(blade_t a, blade_t b) {
  int swaps = 0;
  for (blade_t aa = a >> 1; aa != 0; aa >>= 1) swaps += std::popcount(aa & b);
  swaps += std::popcount(a & b);
  return (swaps & 1) ? -1 : 1;
}

/// Real vector of R^m. Embeds into the grade-1 part of Cl(0,m).
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t m, double fill = 0.0) : c_(m, fill) {}
  Vector(std::initializer_list<double> init) : c_(init) {}
  explicit Vector(std::vector<double> c) : c_(std::move(c)) {}

  std::size_t size() const { return c_.size(); }
  int dim() const { return static_cast<int>(c_.size()); }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  const std::vector<double>& components() const { return c_; }

  double norm_squared() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(norm_squared()); }

  friend Vector operator*(double a, Vector v) {
    for (double& x : v.c_) x *= a;
    return v;
  }
  friend Vector operator+(Vector a, const Vector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend Vector operator-(Vector a, const Vector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> c_;
};

class Multivector {
 public:
  Multivector() : Multivector(1) {}
  explicit Multivector(int m) : sig_(m), c_(sig_.blade_count()) {}
  explicit Multivector(AlgebraSignature sig) : sig_(sig), c_(sig.blade_count()) {}

  static Multivector scalar(int m, complex value) {
    Multivector r(m);
    r.c_[0] = value;
    return r;
  }
  static Multivector blade(int m, blade_t mask, complex value = 1.0) {
    Multivector r(m);
    if (mask >= r.c_.size()) throw domain_error("blade index out of range");
    r.c_[mask] = value;
    return r;
  }
  /// e_i, 1-based as in the usual notation.
  static Multivector basis_vector(int m, int i) {
    if (i < 1 || i > m) throw domain_error("basis vector index out of range");
    return blade(m, blade_t{1} << (i - 1));
  }
  static Multivector from_vector(const Vector& v) {
    Multivector r(v.dim());
    for (int i = 0; i < v.dim(); ++i) r.c_[blade_t{1} << i] = v[i];
    return r;
  }

  int dim() const { return sig_.m; }
  const AlgebraSignature& signature() const { return sig_; }
  std::size_t size() const { return c_.size(); }

  complex operator[](blade_t b) const { return c_[b]; }
  complex& operator[](blade_t b) { return c_[b]; }
  const std::vector<complex>& coefficients() const { return c_; }

  complex scalar_part() const { return c_[0]; }

  Multivector grade_project(int k) const {
    if (k < 0 || k > dim())
      throw domain_error("grade " + std::to_string(k) + " out of range 0.." + std::to_string(dim()));
    Multivector r(sig_);
    for (blade_t b = 0; b < c_.size(); ++b)
      if (blade_grade(b) == k) r.c_[b] = c_[b];
    return r;
  }

  /// Grade-1 coefficients as (possibly complex) vector components.
  std::vector<complex> vector_part() const {
    std::vector<complex> v(dim());
    for (int i = 0; i < dim(); ++i) v[i] = c_[blade_t{1} << i];
    return v;
  }

  double norm() const {
    double s = 0.0;
    for (const auto& z : c_) s += std::norm(z);
    return std::sqrt(s);
  }
  double max_abs() const {
    double s = 0.0;
    for (const auto& z : c_) s = std::max(s, std::abs(z));
    return s;
  }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const complex& z) { return z == complex{}; });
  }

  Multivector& operator+=(const Multivector& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Multivector& operator*=(complex a) {
    for (auto& z : c_) z *= a;
    return *this;
  }
  /// this += a * o
  void add_scaled(const Multivector& o, complex a) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += a * o.c_[i];
  }
  /// Accumulate a * (lhs rhs) without a temporary.
  void add_product(const Multivector& lhs, const Multivector& rhs, complex a = 1.0) {
    check_same(lhs);
    check_same(rhs);
    const blade_t n = static_cast<blade_t>(c_.size());
    for (blade_t i = 0; i < n; ++i) {
      if (lhs.c_[i] == complex{}) continue;
      const complex li = a * lhs.c_[i];
      for (blade_t j = 0; j < n; ++j) {
        if (rhs.c_[j] == complex{}) continue;
        const complex t = li * rhs.c_[j];
        c_[i ^ j] += blade_product_sign(i, j) > 0 ? t : -t;
      }
    }
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }
  friend Multivector operator*(complex s, Multivector a) { return a *= s; }
  friend Multivector operator*(Multivector a, complex s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator*(const Multivector& a, const Multivector& b) {
    Multivector r(a.sig_);
    r.add_product(a, b);
    return r;
  }
  friend bool operator==(const Multivector&, const Multivector&) = default;

 private:
  void check_same(const Multivector& o) const {
    if (!(o.sig_ == sig_))
      throw dimension_mismatch("Clifford dimensions differ: " + std::to_string(sig_.m) + " vs " +
                               std::to_string(o.sig_.m));
  }

  AlgebraSignature sig_;
  std::vector<complex> c_;
};

inline Multivector geometric_product(const Multivector& a, const Multivector& b) { return a * b; }

inline void require_same_dimension(const Vector& x, const Vector& y) {
  if (x.size() != y.size())
    throw dimension_mismatch("vector dimensions differ: " + std::to_string(x.size()) + " vs " +
                             std::to_string(y.size()));
}

inline double inner_vectors(const Vector& x, const Vector& y) {
  require_same_dimension(x, y);
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * y[j];
  return s;
}

/// x ^ y = sum_{j<k} e_j e_k (x_j y_k - x_k y_j).
inline Multivector wedge_vectors(const Vector& x, const Vector& y) {
  require_same_dimension(x, y);
  Multivector r(x.dim());
  for (int j = 0; j < x.dim(); ++j)
    for (int k = j + 1; k < x.dim(); ++k)
      r[(blade_t{1} << j) | (blade_t{1} << k)] = x[j] * y[k] - x[k] * y[j];
  return r;
}

/// |x ^ y| from the bivector components; no cancellation for near-parallel pairs.
inline double wedge_norm(const Vector& x, const Vector& y) {
  require_same_dimension(x, y);
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = j + 1; k < x.size(); ++k) {
      const double d = x[j] * y[k] - x[k] * y[j];
      s += d * d;
    }
  return std::sqrt(s);
}

// JSON: {"m": int, "coeffs": {"<bitmask>": [re, im], ...}}, zero coefficients omitted.
inline void to_json(nlohmann::json& j, const Multivector& a) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (blade_t b = 0; b < a.size(); ++b)
    if (a[b] != complex{}) coeffs[std::to_string(b)] = {a[b].real(), a[b].imag()};
  j = {{"m", a.dim()}, {"coeffs", coeffs}};
}

inline void from_json(const nlohmann::json& j, Multivector& a) {
  Multivector r(j.at("m").get<int>());
  for (const auto& [key, val] : j.at("coeffs").items()) {
    std::size_t pos = 0;
    const unsigned long b = std::stoul(key, &pos);
    if (pos != key.size() || b >= r.size()) throw domain_error("bad blade key '" + key + "'");
    r[static_cast<blade_t>(b)] = complex(val.at(0).get<double>(), val.at(1).get<double>());
  }
  a = std::move(r);
}

inline void to_json(nlohmann::json& j, const Vector& v) { j = v.components(); }
inline void from_json(const nlohmann::json& j, Vector& v) { v = Vector(j.get<std::vector<double>>()); }

}  // namespace fraccft

#endif  // FRACCFT_CLIFFORD_HPP
