#ifndef FRACCFT_VERIFICATION_HPP
#define FRACCFT_VERIFICATION_HPP

// Residual checks for the kernel's differential systems and a seeded suite
// runner that emits one ResidualReport per check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "clifford.hpp"
#include "gaussian_poly.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"
#include "transform.hpp"

namespace fraccft {

struct ResidualReport {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  nlohmann::json metadata = nlohmann::json::object();

  void finalize() { pass = std::isfinite(max_residual) && max_residual <= tolerance; }
};

inline void to_json(nlohmann::json& j, const ResidualReport& r) {
  j = {{"name", r.name},           {"params", r.params}, {"max_residual", r.max_residual},
       {"tolerance", r.tolerance}, {"pass", r.pass},     {"metadata", r.metadata}};
}

inline void to_json(nlohmann::json& j, const KernelParams& p) {
  j = {{"alpha", p.alpha}, {"beta", p.beta}, {"m", p.m}, {"truncation", p.truncation}};
}

struct PointPair {
  Vector x;
  Vector y;
};

/// |x|, |y| in [0.3, 3]; angle between them in [0.05, pi - 0.05].
inline std::vector<PointPair> sample_pairs(int m, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> rad(0.3, 3.0);
  auto direction = [&] {
    Vector v(m);
    double n;
    do {
      for (int i = 0; i < m; ++i) v[i] = nd(rng);
      n = v.norm();
    } while (n < 1e-3);
    return (1.0 / n) * v;
  };
  std::vector<PointPair> out;
  while (static_cast<int>(out.size()) < count) {
    const Vector xi = direction(), eta = direction();
    const double angle = std::acos(std::clamp(inner_vectors(xi, eta), -1.0, 1.0));
    if (angle < 0.05 || angle > std::numbers::pi - 0.05) continue;
    out.push_back({rad(rng) * xi, rad(rng) * eta});
  }
  return out;
}

// ---- finite differences -----------------------------------------------------------

using KernelFn = std::function<Multivector(const Vector&, const Vector&)>;

inline KernelFn kernel_fn(const KernelParams& p) {
  return [p](const Vector& x, const Vector& y) { return evaluate_kernel(x, y, p).assembled(); };
}

/// K with the Gaussian phase divided out.
inline KernelFn kernel_hat_fn(const KernelParams& p) {
  return [p](const Vector& x, const Vector& y) {
    return evaluate_kernel(x, y, p).assembled() *= 1.0 / gaussian_phase(p.alpha, x.norm_squared() + y.norm_squared());
  };
}

/// d/d(arg_j) K by the central difference; arg 0 is x, 1 is y.
inline Multivector partial_fd(const KernelFn& k, const Vector& x, const Vector& y, int arg, int j, double h) {
  Vector xp = x, xm = x, yp = y, ym = y;
  if (arg == 0) {
    xp[j] += h;
    xm[j] -= h;
  } else {
    yp[j] += h;
    ym[j] -= h;
  }
  return (k(xp, yp) - k(xm, ym)) *= 1.0 / (2.0 * h);
}

/// sum_j e_j d/dy_j K
inline Multivector dirac_y_fd(const KernelFn& k, const Vector& x, const Vector& y, double h) {
  Multivector r(x.dim());
  for (int j = 0; j < x.dim(); ++j) r.add_product(Multivector::basis_vector(x.dim(), j + 1), partial_fd(k, x, y, 1, j, h));
  return r;
}

/// sum_j (d/dx_j K) e_j
inline Multivector dirac_x_right_fd(const KernelFn& k, const Vector& x, const Vector& y, double h) {
  Multivector r(x.dim());
  for (int j = 0; j < x.dim(); ++j) r.add_product(partial_fd(k, x, y, 0, j, h), Multivector::basis_vector(x.dim(), j + 1));
  return r;
}

/// Delta in argument `arg` by second central differences.
inline Multivector laplace_fd(const KernelFn& k, const Vector& x, const Vector& y, int arg, double h) {
  const Multivector centre = k(x, y);
  Multivector r(x.dim());
  for (int j = 0; j < x.dim(); ++j) {
    Vector xp = x, xm = x, yp = y, ym = y;
    if (arg == 0) {
      xp[j] += h;
      xm[j] -= h;
    } else {
      yp[j] += h;
      ym[j] -= h;
    }
    r += k(xp, yp) + k(xm, ym) - 2.0 * centre;
  }
  return r *= 1.0 / (h * h);
}

inline double scaled_norm(const Multivector& residual, const Multivector& reference) {
  return residual.norm() / std::max(1.0, reference.norm());
}

// ---- differential systems -----------------------------------------------------------

/// Residuals of both first-order identities at one point:
///   (i sin a d_y + cos a y) K_b = e^{i b (m-1)} K_{-b} x
///   y K_b = e^{i b (m-1)} K_{-b} (i sin a d^R_x + cos a x)
struct FirstOrderResidual {
  Multivector left;   ///< lhs - rhs of the first identity
  Multivector right;  ///< lhs - rhs of the second identity
  double scale = 1.0; ///< max(1, |rhs|)
};

inline FirstOrderResidual pde_first_order_residual(const KernelParams& p, const Vector& x, const Vector& y, double h) {
  KernelParams pm = p;
  pm.beta = -p.beta;
  const auto k = kernel_fn(p), km = kernel_fn(pm);
  const int m = p.m;
  const double sa = std::sin(p.alpha), ca = std::cos(p.alpha);
  const complex e = std::exp(I * p.beta * double(m - 1));
  const Multivector X = Multivector::from_vector(x), Y = Multivector::from_vector(y);
  const Multivector kb = k(x, y), kmb = km(x, y);

  const Multivector lhs1 = (I * sa) * dirac_y_fd(k, x, y, h) + ca * (Y * kb);
  const Multivector rhs1 = e * (kmb * X);
  const Multivector lhs2 = Y * kb;
  const Multivector rhs2 = e * ((I * sa) * dirac_x_right_fd(km, x, y, h) + ca * (kmb * X));
  return {lhs1 - rhs1, lhs2 - rhs2, std::max({1.0, rhs1.norm(), rhs2.norm()})};
}

/// (i sin a d_y) K^_b = e^{i b (m-1)} K^_{-b} x with K^ = K / phase.
inline FirstOrderResidual pde_hatted_residual(const KernelParams& p, const Vector& x, const Vector& y, double h) {
  KernelParams pm = p;
  pm.beta = -p.beta;
  const auto k = kernel_hat_fn(p), km = kernel_hat_fn(pm);
  const double sa = std::sin(p.alpha);
  const complex e = std::exp(I * p.beta * double(p.m - 1));
  const Multivector X = Multivector::from_vector(x);
  const Multivector lhs = (I * sa) * dirac_y_fd(k, x, y, h);
  const Multivector rhs = e * (km(x, y) * X);
  return {lhs - rhs, Multivector(p.m), std::max(1.0, rhs.norm())};
}

/// Residuals of
///   (d_y + y) K = -e^{-i a + i b (m-1)} K_{-b} (d^R_x - x)
///   (d_y - y) K = -e^{ i a + i b (m-1)} K_{-b} (d^R_x + x)
///   (Delta_x - |x|^2) K = (Delta_y - |y|^2) K
struct SecondOrderResidual {
  double plus = 0.0;
  double minus = 0.0;
  double hamiltonian = 0.0;
};

inline SecondOrderResidual pde_second_order_residual(const KernelParams& p, const Vector& x, const Vector& y, double h) {
  KernelParams pm = p;
  pm.beta = -p.beta;
  const auto k = kernel_fn(p), km = kernel_fn(pm);
  const int m = p.m;
  const complex eb = std::exp(I * p.beta * double(m - 1));
  const Multivector X = Multivector::from_vector(x), Y = Multivector::from_vector(y);
  const Multivector kb = k(x, y), kmb = km(x, y);
  const Multivector dy = dirac_y_fd(k, x, y, h), dxr = dirac_x_right_fd(km, x, y, h);

  SecondOrderResidual r;
  const Multivector rp = -(std::exp(-I * p.alpha) * eb) * (dxr - kmb * X);
  r.plus = scaled_norm(dy + Y * kb - rp, rp);
  const Multivector rm = -(std::exp(I * p.alpha) * eb) * (dxr + kmb * X);
  r.minus = scaled_norm(dy - Y * kb - rm, rm);
  const Multivector hx = laplace_fd(k, x, y, 0, h) - x.norm_squared() * kb;
  const Multivector hy = laplace_fd(k, x, y, 1, h) - y.norm_squared() * kb;
  r.hamiltonian = scaled_norm(hx - hy, hy);
  return r;
}

inline ResidualReport check_pde_first_order(const KernelParams& p, const std::vector<PointPair>& samples,
                                            double h = 1e-4, double tol = 1e-6) {
  ResidualReport rep{"pde_first_order", p, 0.0, tol};
  for (const auto& s : samples) {
    const auto r = pde_first_order_residual(p, s.x, s.y, h);
    rep.max_residual = std::max({rep.max_residual, r.left.norm() / r.scale, r.right.norm() / r.scale});
  }
  rep.metadata = {{"h", h}, {"samples", samples.size()}, {"difference", "central"}};
  rep.finalize();
  return rep;
}

inline ResidualReport check_pde_hatted(const KernelParams& p, const std::vector<PointPair>& samples, double h = 1e-4,
                                       double tol = 1e-6) {
  ResidualReport rep{"pde_hatted", p, 0.0, tol};
  for (const auto& s : samples) {
    const auto r = pde_hatted_residual(p, s.x, s.y, h);
    rep.max_residual = std::max(rep.max_residual, r.left.norm() / r.scale);
  }
  rep.metadata = {{"h", h}, {"samples", samples.size()}, {"difference", "central"}};
  rep.finalize();
  return rep;
}

inline ResidualReport check_pde_second_order(const KernelParams& p, const std::vector<PointPair>& samples,
                                             double h = 1e-3, double tol = 1e-4) {
  ResidualReport rep{"pde_second_order", p, 0.0, tol};
  double plus = 0.0, minus = 0.0, ham = 0.0;
  for (const auto& s : samples) {
    const auto r = pde_second_order_residual(p, s.x, s.y, h);
    plus = std::max(plus, r.plus);
    minus = std::max(minus, r.minus);
    ham = std::max(ham, r.hamiltonian);
  }
  rep.max_residual = std::max({plus, minus, ham});
  rep.metadata = {{"h", h},          {"samples", samples.size()}, {"plus_residual", plus},
                  {"minus_residual", minus}, {"hamiltonian_residual", ham}};
  rep.finalize();
  return rep;
}

/// Observed order of the first-order residual under h -> h/2: log2(r(h) / r(h/2)).
inline ResidualReport check_fd_convergence(const KernelParams& p, const std::vector<PointPair>& samples, double h) {
  double coarse = 0.0, fine = 0.0;
  for (const auto& s : samples) {
    const auto a = pde_first_order_residual(p, s.x, s.y, h);
    const auto b = pde_first_order_residual(p, s.x, s.y, 0.5 * h);
    coarse += a.left.norm() + a.right.norm();
    fine += b.left.norm() + b.right.norm();
  }
  const double order = std::log2(coarse / fine);
  ResidualReport rep{"pde_fd_convergence", p, std::abs(order - 2.0), 1.0};
  rep.metadata = {{"h", h}, {"observed_order", order}, {"ratio", coarse / fine}};
  rep.finalize();
  return rep;
}

// ---- growth bound --------------------------------------------------------------

/// max over the grid of |K_A(x, y)| / ((1 + |x|)(1 + |y|))^{(m-2)/2}, blades A of grades 0 and 2,
/// with |x|, |y| on an n x n grid of [0, R] and a fixed set of angles between x and y.
inline double kernel_bound_ratio(const KernelParams& p, int n, double R = 10.0, int angles = 8) {
  const int m = p.m;
  double worst = 0.0;
  const double expo = 0.5 * (m - 2);
  for (int a = 0; a < angles; ++a) {
    const double theta = std::numbers::pi * (a + 0.5) / angles;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double rx = R * i / (n - 1), ry = R * j / (n - 1);
        Vector x(m), y(m);
        x[0] = rx;
        y[0] = ry * std::cos(theta);
        y[1] = ry * std::sin(theta);
        const Multivector k = evaluate_kernel(x, y, p).assembled();
        const double denom = std::pow((1.0 + rx) * (1.0 + ry), expo);
        worst = std::max(worst, k.max_abs() / denom);
      }
  }
  return worst;
}

/// Bound ratio on an n x n grid and on a 2n x 2n refinement; residual is the relative change.
inline ResidualReport check_bound_stability(const KernelParams& p, int n = 50, double tol = 0.05) {
  const double coarse = kernel_bound_ratio(p, n), fine = kernel_bound_ratio(p, 2 * n);
  ResidualReport rep{"bound_stability", p, std::abs(fine - coarse) / fine, tol};
  rep.metadata = {{"grid", n}, {"refined_grid", 2 * n}, {"ratio", coarse}, {"refined_ratio", fine}};
  rep.finalize();
  if (!std::isfinite(coarse) || !std::isfinite(fine)) rep.pass = false;
  return rep;
}

// ---- suite -----------------------------------------------------------------------

struct SuiteConfig {
  std::uint64_t seed = 20240101;
  /// Empty runs every check; otherwise only checks whose name starts with this.
  std::string only;
  int threads = 0;
  /// Relative perturbation added to the series route in the route-agreement check.
  double kernel_perturbation = 0.0;
};

namespace detail {

inline double random_alpha(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  double a;
  do a = u(rng);
  while (std::abs(std::sin(a)) < std::sin(0.1));
  return a;
}

inline ResidualReport suite_route_agreement(std::uint64_t seed, double perturbation) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), u01(0.0, 1.0);
  double worst = 0.0;
  for (int m : {2, 4, 6})
    for (int ps = 0; ps < 4; ++ps) {
      KernelParams p(random_alpha(rng), std::numbers::pi * u(rng), m);
      for (int s = 0; s < 25; ++s) {
        Vector x(m), y(m);
        for (int i = 0; i < m; ++i) x[i] = u(rng), y[i] = u(rng);
        x = std::sqrt(5.0 * u01(rng) / (x.norm() * y.norm())) * x;
        p.truncation = std::max(60, default_truncation(invariants(x, y, p).z_tilde));
        Multivector series = kernel_series(x, y, p).assembled();
        series *= 1.0 + perturbation;
        const Multivector closed = evaluate_kernel(x, y, p, KernelRoute::closed).assembled();
        worst = std::max(worst, (series - closed).norm() / closed.norm());
      }
    }
  ResidualReport rep{"route_agreement", {{"m", {2, 4, 6}}}, worst, 1e-8};
  rep.metadata = {{"samples", 300}, {"perturbation", perturbation}};
  rep.finalize();
  return rep;
}

inline ResidualReport suite_beta_zero(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double worst = 0.0;
  for (int m = 2; m <= 6; ++m)
    for (int s = 0; s < 20; ++s) {
      const KernelParams p(random_alpha(rng), 0.0, m);
      Vector x(m), y(m);
      for (int i = 0; i < m; ++i) x[i] = u(rng), y[i] = u(rng);
      const auto want = Multivector::scalar(m, kernel_fractional_fourier(x, y, p.alpha));
      worst = std::max(worst, (kernel_series(x, y, p).assembled() - want).norm());
      if (m % 2 == 0) worst = std::max(worst, (evaluate_kernel(x, y, p, KernelRoute::closed).assembled() - want).norm());
    }
  ResidualReport rep{"beta_zero_reduction", nlohmann::json::object(), worst, 1e-12};
  rep.finalize();
  return rep;
}

inline ResidualReport suite_classical(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const Vector wx{0.4, -0.8, 0.3, 0.5}, wy{0.9, 0.1, -0.6, 0.2};
  const KernelParams w4(std::numbers::pi / 2, std::numbers::pi / 2, 4);
  const complex c = evaluate_kernel(wx, wy, w4).scalar_part / kernel_cft_reference(wx, wy, 4).scalar_part;
  double worst = 0.0;
  for (int m : {4, 6})
    for (int s = 0; s < 25; ++s) {
      Vector x(m), y(m);
      for (int i = 0; i < m; ++i) x[i] = u(rng), y[i] = u(rng);
      const auto ref = c * kernel_cft_reference(x, y, m).assembled();
      const auto k = evaluate_kernel(x, y, KernelParams(std::numbers::pi / 2, std::numbers::pi / 2, m)).assembled();
      worst = std::max(worst, (k - ref).norm() / ref.norm());
    }
  ResidualReport rep{"classical_kernel", nlohmann::json::object(), worst, 1e-9};
  rep.metadata = {{"constant", {c.real(), c.imag()}}};
  rep.finalize();
  return rep;
}

inline ResidualReport suite_eigenvalues(std::uint64_t seed, int threads) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = random_alpha(rng), b = std::numbers::pi * u(rng);
  std::vector<TargetFunction> fs;
  for (Parity par : {Parity::even, Parity::odd})
    for (int k = 0; k <= 2; ++k) {
      BasisExpansion e(2);
      e.add(par, 1, k, monogenic_m2(k).first);
      fs.push_back(TargetFunction::from_basis(e));
    }
  std::vector<Vector> ys;
  while (ys.size() < 6) {
    Vector y{2.5 * u(rng), 2.5 * u(rng)};
    if (y.norm() <= 2.5) ys.push_back(y);
  }
  QuadratureSpec q;
  q.box_radius = 9.0;
  q.threads = threads;
  const auto out = fractional_cft_batch(fs, KernelParams(a, b, 2), ys, q);
  double worst = 0.0;
  for (std::size_t f = 0; f < fs.size(); ++f)
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const auto want = fs[f].basis->transform_exact(a, b, ys[i]);
      worst = std::max(worst, (out[f][i] - want).norm() / want.norm());
    }
  // m = 4 through the radial route
  double worst4 = 0.0;
  for (Parity par : {Parity::even, Parity::odd})
    for (int k = 0; k <= 2; ++k) {
      const auto mk = monogenic_m2(k, 4).second;
      BasisExpansion e(4);
      e.add(par, 1, k, mk);
      const Vector y{0.5 * u(rng), 0.5 * u(rng), 0.5 * u(rng), 0.5 * u(rng)};
      const auto got = radial_transform(psi_radial_profile(par, 1, k, 4), mk, k, par, KernelParams(a, b, 4), y);
      const auto want = e.transform_exact(a, b, y);
      worst4 = std::max(worst4, (got - want).norm() / want.norm());
    }
  // each residual divided by its own tolerance
  ResidualReport rep{"eigenvalues", {{"alpha", a}, {"beta", b}}, std::max(worst / 1e-6, worst4 / 1e-5), 1.0};
  rep.metadata = {{"m2_quadrature_residual", worst}, {"m2_tolerance", 1e-6},
                  {"m4_radial_residual", worst4},    {"m4_tolerance", 1e-5}};
  rep.finalize();
  return rep;
}

inline ResidualReport suite_operator_calculus(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int m : {2, 3, 4}) {
    // random cubic with Clifford coefficients
    CliffordPolynomial f(m);
    const auto xs = CliffordPolynomial::vector_variable(m);
    Multivector c(m);
    for (blade_t bl = 0; bl < c.size(); ++bl) c[bl] = complex(u(rng), u(rng));
    f = c * pow(xs, 3) + CliffordPolynomial::coordinate(m, 0) * c;
    worst = std::max(worst, max_difference(dirac_apply(dirac_apply(f)), -1.0 * laplace_apply(f)));
    worst = std::max(worst, max_difference(x_left(dirac_apply(f)) + dirac_apply(x_left(f)),
                                           -2.0 * euler_apply(f) - double(m) * f));
    const GaussianPolynomial g(f);
    auto plus = [](const GaussianPolynomial& h) { return dirac_apply(h) + x_left(h); };
    auto minus = [](const GaussianPolynomial& h) { return dirac_apply(h) - x_left(h); };
    const auto lhs = 2.0 * (laplace_apply(g) - GaussianPolynomial(CliffordPolynomial::norm_squared(m) * g.poly));
    worst = std::max(worst, max_difference(lhs, -1.0 * (plus(minus(g)) + minus(plus(g)))) / std::max(1.0, lhs.max_abs()));
  }
  for (int m : {2, 4})
    for (int j = 0; j <= 2; ++j)
      for (int k = 0; k <= 2; ++k)
        for (Parity par : {Parity::even, Parity::odd}) {
          const auto psi = psi_basis(par, j, k, monogenic_m2(k, m).first);
          const double sz = psi.max_abs();
          worst = std::max(worst, max_difference(gamma_apply(psi), double(gamma_eigenvalue(par, k, m)) * psi) / sz);
          worst = std::max(worst, max_difference(hamiltonian_apply(psi), double(hamiltonian_eigenvalue(par, j, k)) * psi) / sz);
        }
  ResidualReport rep{"operator_calculus", nlohmann::json::object(), worst, 1e-13};
  rep.finalize();
  return rep;
}

inline ResidualReport suite_lemma(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k <= 4; ++k) {
    Vector x(4), y(4);
    for (int i = 0; i < 4; ++i) x[i] = u(rng), y[i] = u(rng);
    const double h = 1e-5;
    const auto fd = (1.0 / (2 * h)) * (lemma_gamma_action(k, x, y, h) - lemma_gamma_action(k, x, y, -h));
    const auto symbolic = I * gamma_apply(gegenbauer_zonal(k, 1.0, x)).evaluate(y);
    worst = std::max(worst, (fd - symbolic).norm() / std::max(1.0, symbolic.norm()));
  }
  ResidualReport rep{"lemma_gamma_action", {{"m", 4}}, worst, 1e-6};
  rep.metadata = {{"h", 1e-5}};
  rep.finalize();
  return rep;
}

inline ResidualReport suite_laguerre_bessel() {
  double worst = 0.0;
  for (int n = 0; n <= 2; ++n)
    for (double nu : {0.0, 1.0})
      for (complex b : {complex(1.0), complex(0.7, 0.4), complex(1.0, -0.8)})
        for (double y : {0.0, 0.8, 2.0, 3.5}) worst = std::max(worst, laguerre_hankel_identity_check(n, nu, b, y));
  ResidualReport rep{"laguerre_bessel", nlohmann::json::object(), worst, 1e-8};
  rep.finalize();
  return rep;
}

}  // namespace detail

inline std::vector<std::string> suite_check_names() {
  return {"beta_zero_reduction", "bound_stability_m2", "bound_stability_m4", "classical_kernel", "eigenvalues",
          "laguerre_bessel",     "lemma_gamma_action", "operator_calculus",  "pde_fd_convergence", "pde_first_order",
          "pde_hatted",          "pde_second_order",   "route_agreement"};
}

/// Every check, in name order; deterministic for a fixed seed.
inline std::vector<ResidualReport> run_suite(const SuiteConfig& cfg = {}) {
  const auto names = suite_check_names();
  std::vector<std::string> chosen;
  for (const auto& n : names)
    if (cfg.only.empty() || n.rfind(cfg.only, 0) == 0) chosen.push_back(n);

  auto seed_for = [&](const std::string& name) {
    return cfg.seed ^ (std::hash<std::string>{}(name) & 0xffffffffu);
  };
  auto run = [&](const std::string& name) -> ResidualReport {
    const std::uint64_t seed = seed_for(name);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    if (name == "route_agreement") return detail::suite_route_agreement(seed, cfg.kernel_perturbation);
    if (name == "beta_zero_reduction") return detail::suite_beta_zero(seed);
    if (name == "classical_kernel") return detail::suite_classical(seed);
    if (name == "eigenvalues") return detail::suite_eigenvalues(seed, 1);
    if (name == "operator_calculus") return detail::suite_operator_calculus(seed);
    if (name == "lemma_gamma_action") return detail::suite_lemma(seed);
    if (name == "laguerre_bessel") return detail::suite_laguerre_bessel();
    if (name.rfind("bound_stability", 0) == 0) {
      auto rep = check_bound_stability(KernelParams(std::numbers::pi / 3, std::numbers::pi / 4, name.back() == '2' ? 2 : 4));
      rep.name = name;
      return rep;
    }
    const int m = 2 + 2 * (std::abs(static_cast<int>(seed % 2)));
    const KernelParams p(detail::random_alpha(rng), std::numbers::pi * u(rng), m);
    const auto samples = sample_pairs(m, 10, seed);
    if (name == "pde_first_order") return check_pde_first_order(p, samples, 1e-4, m == 2 ? 1e-6 : 1e-5);
    if (name == "pde_hatted") return check_pde_hatted(p, samples, 1e-4, m == 2 ? 1e-6 : 1e-5);
    if (name == "pde_second_order") return check_pde_second_order(p, samples);
    return check_fd_convergence(p, samples, 1e-3);
  };

  std::vector<ResidualReport> out(chosen.size());
  parallel_for(chosen.size(), resolve_threads(cfg.threads), [&](std::size_t i) { out[i] = run(chosen[i]); });
  return out;
}

}  // namespace fraccft

#endif  // FRACCFT_VERIFICATION_HPP
