#include <random>

#include <gtest/gtest.h>

#include "fraccft/gaussian_poly.hpp"

using namespace fraccft;

namespace {

constexpr double tight = 1e-13;

Multivector random_coeff(int m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Multivector a(m);
  for (blade_t b = 0; b < a.size(); ++b) a[b] = complex(u(rng), u(rng));
  return a;
}

// Random polynomial with every monomial up to the given total degree.
CliffordPolynomial random_poly(int m, int max_degree, std::mt19937_64& rng) {
  CliffordPolynomial p(m);
  Exponents e(m, 0);
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == m) {
      p.add_term(e, random_coeff(m, rng));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[j] = v;
      self(self, j + 1, left - v);
    }
    e[j] = 0;
  };
  rec(rec, 0, max_degree);
  return p;
}

// (<c, x>)^k with c = u + i v, u orthogonal to v and |u| = |v|, is harmonic.
CliffordPolynomial random_harmonic(int m, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<double> u(m), v(m);
  for (int i = 0; i < m; ++i) u[i] = nd(rng), v[i] = nd(rng);
  double uu = 0, uv = 0;
  for (int i = 0; i < m; ++i) uu += u[i] * u[i], uv += u[i] * v[i];
  for (int i = 0; i < m; ++i) v[i] -= uv / uu * u[i];
  double vv = 0;
  for (int i = 0; i < m; ++i) vv += v[i] * v[i];
  for (int i = 0; i < m; ++i) v[i] *= std::sqrt(uu / vv);
  CliffordPolynomial lin(m);
  for (int i = 0; i < m; ++i) lin += complex(u[i], v[i]) * CliffordPolynomial::coordinate(m, i);
  return random_coeff(m, rng) * pow((1.0 / std::sqrt(uu)) * lin, k);
}

GaussianPolynomial gaussian(int m) { return GaussianPolynomial(CliffordPolynomial::constant(m, 1.0)); }

}  // namespace

TEST(GaussianPoly, DiracOfVariable) {
  for (int m = 1; m <= 5; ++m) {
    const auto d = dirac_apply(CliffordPolynomial::vector_variable(m));
    EXPECT_LE(max_difference(d, CliffordPolynomial::constant(m, -double(m))), tight);
  }
}

TEST(GaussianPoly, DiracSquaredIsMinusLaplacian) {
  std::mt19937_64 rng(1);
  for (int m : {2, 3, 4}) {
    const auto f = random_poly(m, 3, rng);
    EXPECT_LE(max_difference(dirac_apply(dirac_apply(f)), -1.0 * laplace_apply(f)), tight);
    const GaussianPolynomial g(f);
    EXPECT_LE(max_difference(dirac_apply(dirac_apply(g)), -1.0 * laplace_apply(g)), tight);
  }
}

TEST(GaussianPoly, Anticommutator) {
  std::mt19937_64 rng(2);
  for (int m : {2, 3, 4}) {
    const auto f = random_poly(m, 3, rng);
    const auto lhs = x_left(dirac_apply(f)) + dirac_apply(x_left(f));
    const auto rhs = -2.0 * euler_apply(f) - double(m) * f;
    EXPECT_LE(max_difference(lhs, rhs), tight);
  }
}

TEST(GaussianPoly, EulerAndLaplace) {
  std::mt19937_64 rng(3);
  const auto h = random_harmonic(3, 4, rng);
  EXPECT_LE(max_difference(euler_apply(h), 4.0 * h), tight);
  for (int m = 1; m <= 6; ++m)
    EXPECT_LE(max_difference(laplace_apply(CliffordPolynomial::norm_squared(m)), CliffordPolynomial::constant(m, 2.0 * m)),
              tight);
}

TEST(GaussianPoly, DegreeBookkeeping) {
  std::mt19937_64 rng(4);
  const auto f = random_poly(3, 4, rng);
  EXPECT_EQ(f.degree(), 4);
  EXPECT_EQ(dirac_apply(f).prune().degree(), 3);
  EXPECT_EQ(gamma_apply(f).prune().degree(), 4);
}

TEST(GaussianPoly, DiracGammaCommutation) {
  std::mt19937_64 rng(5);
  for (int m : {2, 3, 4}) {
    const auto f = random_poly(m, 3, rng);
    const auto df = dirac_apply(f);
    const auto lhs = dirac_apply(gamma_apply(f));
    const auto rhs = double(m - 1) * df - gamma_apply(df);
    EXPECT_LE(max_difference(lhs, rhs), 1e-12);
  }
}

TEST(GaussianPoly, MonogenicM2) {
  for (int k = 0; k <= 6; ++k) {
    const auto [p, q] = monogenic_m2(k);
    EXPECT_LE(dirac_apply(p).max_abs(), tight);
    EXPECT_LE(dirac_apply(q).max_abs(), tight);
    EXPECT_TRUE(p.is_homogeneous(k));
  }
  const auto [p0, q0] = monogenic_m2(0);
  EXPECT_LE(max_difference(p0, CliffordPolynomial::constant(2, 1.0)), 0.0);
  EXPECT_LE(max_difference(q0, CliffordPolynomial::constant(Multivector::basis_vector(2, 1))), 0.0);
  const auto [p1, q1] = monogenic_m2(1);
  const auto want = CliffordPolynomial::coordinate(2, 0) - Multivector::blade(2, 0b11) * CliffordPolynomial::coordinate(2, 1);
  EXPECT_LE(max_difference(p1, want), 0.0);
  // stays monogenic when embedded in higher dimension
  for (int m : {3, 4, 6}) EXPECT_LE(dirac_apply(monogenic_m2(3, m).first).max_abs(), tight);
}

TEST(GaussianPoly, MonogenicProjection) {
  const int m = 4;
  const auto h = CliffordPolynomial::coordinate(m, 0) + Multivector::blade(m, 0b11) * CliffordPolynomial::coordinate(m, 1);
  const auto mk = monogenic_project(h, 1);
  EXPECT_LE(dirac_apply(mk).max_abs(), tight);
  EXPECT_GT(mk.max_abs(), 0.1);

  const auto [already, unused] = monogenic_m2(2, m);
  EXPECT_LE(max_difference(monogenic_project(already, 2), already), tight);

  std::mt19937_64 rng(6);
  for (int k = 0; k <= 4; ++k)
    for (int mm : {3, 4, 5}) {
      const auto hh = random_harmonic(mm, k, rng);
      const auto once = monogenic_project(hh, k);
      EXPECT_LE(dirac_apply(once).max_abs(), 1e-12 * std::max(1.0, hh.max_abs()));
      EXPECT_LE(max_difference(monogenic_project(once, k), once), 1e-12 * std::max(1.0, hh.max_abs()));
    }

  EXPECT_THROW(monogenic_project(CliffordPolynomial::norm_squared(3), 2), domain_error);
  EXPECT_THROW(monogenic_project(CliffordPolynomial::coordinate(3, 0), 2), domain_error);
}

TEST(GaussianPoly, GammaExamples) {
  for (int m : {2, 3, 4}) {
    EXPECT_LE(gamma_apply(CliffordPolynomial::constant(m, 1.0)).max_abs(), 0.0);
    const GaussianPolynomial xg(CliffordPolynomial::vector_variable(m));
    EXPECT_LE(max_difference(gamma_apply(xg), double(m - 1) * xg), tight);
  }
  for (int k = 0; k <= 4; ++k) {
    const auto psi = psi_basis(Parity::even, 0, k, monogenic_m2(k).first);
    EXPECT_LE(max_difference(gamma_apply(psi), -double(k) * psi), tight);
  }
}

TEST(GaussianPoly, PsiExamples) {
  EXPECT_LE(max_difference(psi_basis(Parity::even, 0, 0, CliffordPolynomial::constant(3, 1.0)), gaussian(3)), 0.0);
  EXPECT_LE(max_difference(psi_basis(Parity::odd, 0, 0, CliffordPolynomial::constant(3, 1.0)),
                           GaussianPolynomial(CliffordPolynomial::vector_variable(3))),
            tight);
  const auto psi = psi_basis(Parity::even, 1, 0, CliffordPolynomial::constant(2, 1.0));
  const GaussianPolynomial want(CliffordPolynomial::constant(2, 1.0) - CliffordPolynomial::norm_squared(2));
  EXPECT_LE(max_difference(psi, want), tight);
  const Vector x{0.3, -0.7};
  EXPECT_NEAR(std::abs(psi.evaluate(x)[0] - (1.0 - x.norm_squared()) * std::exp(-0.5 * x.norm_squared())), 0.0, 1e-15);

  EXPECT_THROW(psi_basis(Parity::even, 0, 1, CliffordPolynomial::coordinate(2, 0)), domain_error);
  EXPECT_THROW(psi_basis(Parity::even, 0, 2, monogenic_m2(1).first), domain_error);
}

TEST(GaussianPoly, HamiltonianExamples) {
  for (int m : {2, 3, 4}) EXPECT_LE(hamiltonian_apply(gaussian(m)).max_abs(), tight);
  const auto psi20 = psi_basis(Parity::even, 1, 0, CliffordPolynomial::constant(2, 1.0));
  EXPECT_EQ(hamiltonian_eigenvalue(Parity::even, 1, 0), 2);
  EXPECT_LE(max_difference(hamiltonian_apply(psi20), 2.0 * psi20), tight);
  const auto psi11 = psi_basis(Parity::odd, 0, 1, monogenic_m2(1).first);
  EXPECT_EQ(hamiltonian_eigenvalue(Parity::odd, 0, 1), 2);
  EXPECT_LE(max_difference(hamiltonian_apply(psi11), 2.0 * psi11), tight);
}

TEST(GaussianPoly, EigenrelationsOnBasis) {
  for (int m : {2, 4}) {
    std::vector<std::vector<CliffordPolynomial>> mono(4);
    for (int k = 0; k <= 3; ++k) {
      const auto [p, q] = monogenic_m2(k, m);
      mono[k] = {p, q};
      if (m == 4 && k >= 1) {
        // a monogenic not of the (x1 - e12 x2)^k family
        const auto h = pow(CliffordPolynomial::coordinate(m, 2) + complex(0, 1) * CliffordPolynomial::coordinate(m, 3), k) *
                       Multivector::basis_vector(m, 1);
        mono[k].push_back(monogenic_project(h, k));
      }
    }
    for (int j = 0; j <= 3; ++j)
      for (int k = 0; k <= 3; ++k)
        for (const auto& mk : mono[k])
          for (Parity par : {Parity::even, Parity::odd}) {
            const auto psi = psi_basis(par, j, k, mk);
            const double sz = psi.poly.max_abs();
            const auto g = gamma_apply(psi), h = hamiltonian_apply(psi);
            EXPECT_LE(max_difference(g, double(gamma_eigenvalue(par, k, m)) * psi), tight * sz)
                << m << " " << to_string(par) << " j=" << j << " k=" << k;
            EXPECT_LE(max_difference(h, double(hamiltonian_eigenvalue(par, j, k)) * psi), tight * sz)
                << m << " " << to_string(par) << " j=" << j << " k=" << k;
          }
  }
}

TEST(GaussianPoly, HamiltonianAnticommutator) {
  // 2 (Delta - |x|^2) = -{d_x + x, d_x - x}
  std::mt19937_64 rng(7);
  for (int m : {2, 3}) {
    const GaussianPolynomial f(random_poly(m, 3, rng));
    auto plus = [](const GaussianPolynomial& g) { return dirac_apply(g) + x_left(g); };
    auto minus = [](const GaussianPolynomial& g) { return dirac_apply(g) - x_left(g); };
    const auto lhs = 2.0 * (laplace_apply(f) - GaussianPolynomial(CliffordPolynomial::norm_squared(m) * f.poly));
    const auto rhs = -1.0 * (plus(minus(f)) + minus(plus(f)));
    EXPECT_LE(max_difference(lhs, rhs), tight);
  }
}

TEST(GaussianPoly, GaussianDerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(8);
  const GaussianPolynomial f(random_poly(3, 2, rng));
  const Vector x{0.4, -0.2, 0.9};
  const double h = 1e-5;
  for (int j = 0; j < 3; ++j) {
    Vector xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const auto fd = (1.0 / (2 * h)) * (f.evaluate(xp) - f.evaluate(xm));
    EXPECT_LE((fd - partial(f, j).evaluate(x)).norm(), 1e-8);
  }
}

TEST(GaussianPoly, GegenbauerZonal) {
  const Vector x{0.6, -1.1, 0.4}, y{1.3, 0.2, -0.5};
  const double z = x.norm() * y.norm(), w = inner_vectors(x, y) / z;
  for (int k = 0; k <= 5; ++k) {
    const auto p = gegenbauer_zonal(k, 0.5, x);
    EXPECT_NEAR(p.evaluate(y)[0].real(), std::pow(z, k) * special::gegenbauer(k, 0.5, w), 1e-13);
    EXPECT_LE(laplace_apply(p).max_abs(), 1e-12);  // zonal harmonic for lambda = (m-2)/2
  }
}

TEST(GaussianPoly, JsonRoundTrip) {
  std::mt19937_64 rng(9);
  const auto f = random_poly(2, 2, rng);
  const nlohmann::json j = f;
  EXPECT_EQ(j["m"], 2);
  EXPECT_EQ(j["terms"].size(), 6u);
  EXPECT_LE(max_difference(j.get<CliffordPolynomial>(), f), 0.0);
  const GaussianPolynomial g(f);
  const nlohmann::json jg = g;
  EXPECT_LE(max_difference(jg.get<GaussianPolynomial>(), g), 0.0);
}
