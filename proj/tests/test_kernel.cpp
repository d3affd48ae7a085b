#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fraccft/gaussian_poly.hpp"
#include "fraccft/kernel.hpp"

using namespace fraccft;

namespace {

constexpr double pi = std::numbers::pi;

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(unsigned seed) : rng(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  Vector vec(int m, double scale = 1.0) {
    Vector v(m);
    for (int i = 0; i < m; ++i) v[i] = uniform(-scale, scale);
    return v;
  }
  double alpha() {
    double a;
    do a = uniform(-pi, pi);
    while (std::abs(std::sin(a)) < std::sin(0.1));
    return a;
  }
};

double rel_diff(const Multivector& a, const Multivector& b) { return (a - b).norm() / b.norm(); }

int series_order(const Vector& x, const Vector& y, const KernelParams& p) {
  return std::max(60, default_truncation(invariants(x, y, p).z_tilde));
}

}  // namespace

TEST(Invariants, Examples) {
  const KernelParams right(pi / 2, 0.3, 2);
  auto g = invariants({1, 0}, {0, 1}, right);
  EXPECT_NEAR(g.s, 0.0, 1e-15);
  EXPECT_NEAR(g.t, 1.0, 1e-15);
  EXPECT_NEAR(g.z_tilde, 1.0, 1e-15);
  g = invariants({1, 0}, {1, 0}, right);
  EXPECT_EQ(g.s, 1.0);
  EXPECT_EQ(g.t, 0.0);
  EXPECT_EQ(g.w, 1.0);
  g = invariants({1, 2}, {3, 4}, KernelParams(pi / 6, 0.3, 2));
  EXPECT_NEAR(g.s, 11.0, 1e-14);
  EXPECT_NEAR(g.t, 2.0, 1e-14);
  EXPECT_NEAR(g.z_tilde, std::sqrt(5.0) * 5.0 / 0.5, 1e-12);
  EXPECT_THROW(invariants({1, 0}, {1, 0, 0}, right), dimension_mismatch);
  EXPECT_THROW(invariants({1, 0, 0}, {1, 0, 0}, right), dimension_mismatch);
}

TEST(Invariants, PythagoreanIdentityAndNearParallel) {
  Sampler s(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 5;
    const auto x = s.vec(m), y = s.vec(m);
    const auto g = invariants(x, y, KernelParams(1.0, 0.5, m));
    EXPECT_GE(g.t, 0.0);
    EXPECT_NEAR(g.s * g.s + g.t * g.t, x.norm_squared() * y.norm_squared(), 1e-13);
    EXPECT_LE(std::abs(g.w), 1.0);
  }
  // nearly parallel pair: t keeps full relative accuracy
  const Vector x{1.0, 1e-9, 0.0}, y{1.0, 0.0, 0.0};
  EXPECT_NEAR(invariants(x, y, KernelParams(1.0, 0.5, 3)).t / 1e-9, 1.0, 1e-12);
}

TEST(KernelParams, Validation) {
  EXPECT_THROW(KernelParams(0.0, 0.5, 2), unsupported);
  EXPECT_THROW(KernelParams(pi, 0.5, 2), unsupported);
  EXPECT_THROW(KernelParams(-pi, 0.5, 2), unsupported);
  EXPECT_THROW(KernelParams(4.0, 0.5, 2), domain_error);
  EXPECT_THROW(KernelParams(1.0, 3.5, 2), domain_error);
  EXPECT_THROW(KernelParams(1.0, 0.5, 1), domain_error);
  EXPECT_THROW(KernelParams(1.0, 0.5, 9), domain_error);
  EXPECT_EQ(KernelParams(1.0, 0.5, 6).lambda(), 2.0);
}

TEST(Kernel, FractionalFourierExamples) {
  const Vector x{0.7, -0.2}, y{0.1, 1.3};
  EXPECT_LE(std::abs(kernel_fractional_fourier(x, y, pi / 2) - std::exp(-I * inner_vectors(x, y))), 1e-15);
  const complex want = std::exp(-I * 2.0 / std::sqrt(3.0)) * std::exp(I / std::sqrt(3.0));
  EXPECT_LE(std::abs(kernel_fractional_fourier({1, 0}, {1, 0}, pi / 3) - want), 1e-15);
  EXPECT_THROW(kernel_fractional_fourier(x, y, 0.0), unsupported);
}

TEST(Kernel, M2Examples) {
  const KernelParams p(pi / 2, pi / 2, 2);
  const auto want = Multivector::scalar(2, std::cos(1.0)) + Multivector::blade(2, 0b11, std::sin(1.0));
  EXPECT_LE((kernel_closed_m2({1, 0}, {0, 1}, p).assembled() - want).norm(), 1e-15);
  EXPECT_LE((kernel_series({1, 0}, {0, 1}, p).assembled() - want).norm(), 1e-13);
  EXPECT_NEAR(std::cos(1.0), 0.540302, 1e-6);
  EXPECT_NEAR(std::sin(1.0), 0.841471, 1e-6);

  // parallel vectors: removable singularity
  const KernelParams q(1.1, 0.7, 2);
  const Vector x{0.5, 1.0}, y{1.5, 3.0};
  const auto k = kernel_closed_m2(x, y, q);
  EXPECT_TRUE(k.bivector_part.is_zero());
  const double s = inner_vectors(x, y);
  const complex want_s = std::exp(-I * s * std::cos(0.7) / std::sin(1.1)) * gaussian_phase(1.1, x.norm_squared() + y.norm_squared());
  EXPECT_LE(std::abs(k.scalar_part - want_s), 1e-14);
  EXPECT_THROW(kernel_closed_m2({1, 0, 0}, {0, 1, 0}, KernelParams(1.0, 0.5, 3)), unsupported);
}

TEST(Kernel, BetaZeroReduction) {
  Sampler s(2);
  for (int m = 2; m <= 7; ++m)
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = s.vec(m, 1.5), y = s.vec(m, 1.5);
      const KernelParams p(s.alpha(), 0.0, m);
      const auto want = Multivector::scalar(m, kernel_fractional_fourier(x, y, p.alpha));
      EXPECT_LE((kernel_series(x, y, p).assembled() - want).norm(), 1e-12) << "m=" << m;
      if (m % 2 == 0) EXPECT_LE((evaluate_kernel(x, y, p, KernelRoute::closed).assembled() - want).norm(), 1e-12);
    }
}

TEST(Kernel, RouteAgreement) {
  Sampler s(3);
  for (int m : {2, 4, 6})
    for (int pset = 0; pset < 6; ++pset) {
      KernelParams p(s.alpha(), s.uniform(-pi, pi), m);
      for (int trial = 0; trial < 30; ++trial) {
        auto x = s.vec(m), y = s.vec(m);
        x = std::sqrt(5.0 * s.uniform(0, 1) / (x.norm() * y.norm())) * x;
        p.truncation = series_order(x, y, p);
        const auto series = kernel_series(x, y, p).assembled();
        const auto closed = evaluate_kernel(x, y, p, KernelRoute::closed).assembled();
        EXPECT_LE(rel_diff(series, closed), 1e-9) << "m=" << m << " alpha=" << p.alpha << " beta=" << p.beta;
      }
    }
}

TEST(Kernel, ClosedEvenRegularAtSpecialBeta) {
  Sampler s(4);
  for (int m : {4, 6, 8})
    for (double beta : {pi / 2, -pi / 2, 1e-9, -1e-9, pi, -pi}) {
      const auto x = s.vec(m), y = s.vec(m);
      KernelParams p(0.9, beta, m);
      const auto closed = kernel_closed_even(x, y, p).assembled();
      p.truncation = 80;
      const auto series = kernel_series(x, y, p).assembled();
      EXPECT_LE(rel_diff(series, closed), 1e-11) << "m=" << m << " beta=" << beta;
    }
  // s* = 0 (orthogonal vectors)
  const KernelParams p(1.2, 0.4, 4);
  const auto closed = kernel_closed_even({1, 0, 0, 0}, {0, 2, 0, 0}, p).assembled();
  const auto series = kernel_series({1, 0, 0, 0}, {0, 2, 0, 0}, p).assembled();
  EXPECT_LE(rel_diff(series, closed), 1e-12);
}

TEST(Kernel, GradePurity) {
  Sampler s(5);
  for (int m = 2; m <= 7; ++m) {
    const auto x = s.vec(m), y = s.vec(m);
    const KernelParams p(s.alpha(), s.uniform(-pi, pi), m);
    std::vector<Multivector> values{kernel_series(x, y, p).assembled()};
    if (m % 2 == 0) values.push_back(evaluate_kernel(x, y, p, KernelRoute::closed).assembled());
    for (const auto& v : values)
      for (int g = 0; g <= m; ++g)
        if (g != 0 && g != 2) EXPECT_EQ(v.grade_project(g).max_abs(), 0.0);
  }
}

TEST(Kernel, Asymmetry) {
  const Vector x{0.8, -0.3, 0.5, 1.1}, y{-0.4, 0.9, 0.2, 0.6};
  const KernelParams p(1.0, 0.7, 4);
  const auto kxy = evaluate_kernel(x, y, p).assembled(), kyx = evaluate_kernel(y, x, p).assembled();
  EXPECT_GT((kxy - kyx).norm(), 1e-3);
  const KernelParams p0(1.0, 0.0, 4);
  EXPECT_LE(std::abs(evaluate_kernel(x, y, p0).scalar_part - evaluate_kernel(y, x, p0).scalar_part), 1e-15);
}

TEST(Kernel, OddDimensionFlags) {
  const KernelParams p(1.0, 0.5, 3);
  EXPECT_TRUE(kernel_series({1, 0, 0}, {0, 1, 0}, p).unvalidated);
  EXPECT_FALSE(kernel_series({1, 0}, {0, 1}, KernelParams(1.0, 0.5, 2)).unvalidated);
  EXPECT_THROW(evaluate_kernel({1, 0, 0}, {0, 1, 0}, p, KernelRoute::closed), unsupported);
  EXPECT_THROW(kernel_closed_even({1, 0, 0}, {0, 1, 0}, p), unsupported);
  EXPECT_NO_THROW(evaluate_kernel({1, 0, 0}, {0, 1, 0}, p));
}

TEST(Kernel, TailEstimateShrinksWithOrder) {
  const Vector x{1.5, -0.5, 0.7, 0.2}, y{0.3, 1.2, -0.9, 0.4};
  KernelParams p(0.6, 0.8, 4);
  p.truncation = 10;
  const double coarse = kernel_series(x, y, p).tail_estimate;
  p.truncation = 60;
  const double fine = kernel_series(x, y, p).tail_estimate;
  EXPECT_GT(coarse, 1e-8);
  EXPECT_LT(fine, 1e-30);
}

TEST(ClassicalKernel, Examples) {
  // m = 4: A* is the single term J~_{1/2}(t); with s = 0, B* = C* = 0
  const Vector x{1, 0, 0, 0}, y{0, 2, 0, 0};
  const double t = 2.0;
  const auto k = kernel_cft_reference(x, y, 4);
  EXPECT_NEAR(k.scalar_part.real(), std::sqrt(pi / 2) * special::bessel_j_tilde(0.5, t), 1e-15);
  EXPECT_EQ(k.scalar_part.imag(), 0.0);
  EXPECT_TRUE(k.bivector_part.is_zero());
  EXPECT_THROW(kernel_cft_reference({1, 0, 0}, {0, 1, 0}, 3), unsupported);
  EXPECT_THROW(kernel_cft_reference({1, 0}, {0, 1}, 2), unsupported);
}

TEST(ClassicalKernel, GlobalConstant) {
  Sampler s(6);
  const Vector wx{0.4, -0.8, 0.3, 0.5}, wy{0.9, 0.1, -0.6, 0.2};
  const KernelParams p4(pi / 2, pi / 2, 4);
  const complex c = evaluate_kernel(wx, wy, p4).scalar_part / kernel_cft_reference(wx, wy, 4).scalar_part;
  EXPECT_NEAR(std::abs(c - 1.0), 0.0, 1e-12);
  for (int m : {4, 6})
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = s.vec(m, 1.5), y = s.vec(m, 1.5);
      const KernelParams p(pi / 2, pi / 2, m);
      const auto ref = c * kernel_cft_reference(x, y, m).assembled();
      EXPECT_LE(rel_diff(evaluate_kernel(x, y, p).assembled(), ref), 1e-10);
      KernelParams ps = p;
      ps.truncation = series_order(x, y, p);
      EXPECT_LE(rel_diff(kernel_series(x, y, ps).assembled(), ref), 1e-10);
    }
}

TEST(GammaAction, Examples) {
  const Vector x{0.5, -1.0, 0.3, 0.8}, y{1.2, 0.4, -0.7, 0.1};
  const double lambda = 1.0, z = x.norm() * y.norm(), w = inner_vectors(x, y) / z;
  for (int k = 0; k <= 5; ++k) {
    const auto r = lemma_gamma_action(k, x, y, 0.0);
    EXPECT_LE((r - Multivector::scalar(4, std::pow(z, k) * special::gegenbauer(k, lambda, w))).norm(), 1e-13);
  }
  for (double beta : {0.3, 1.7, -2.5})
    EXPECT_LE((lemma_gamma_action(0, x, y, beta) - Multivector::scalar(4, 1.0)).norm(), 1e-15);
  EXPECT_THROW(lemma_gamma_action(1, Vector{1, 0}, Vector{0, 1}, 0.3), unsupported);
}

TEST(GammaAction, DerivativeMatchesGammaOperator) {
  Sampler s(7);
  for (int m : {3, 4, 6})
    for (int k = 0; k <= 4; ++k) {
      const auto x = s.vec(m), y = s.vec(m);
      const double lambda = 0.5 * (m - 2), h = 1e-5;
      const auto fd = (1.0 / (2 * h)) * (lemma_gamma_action(k, x, y, h) - lemma_gamma_action(k, x, y, -h));
      const auto symbolic = I * gamma_apply(gegenbauer_zonal(k, lambda, x)).evaluate(y);
      EXPECT_LE((fd - symbolic).norm(), 1e-6 * std::max(1.0, symbolic.norm())) << "m=" << m << " k=" << k;
    }
}

TEST(GammaAction, GroupLaw) {
  // exp(i b1 Gamma) exp(i b2 Gamma) = exp(i (b1 + b2) Gamma) on the span {P_k, (x^y) Q_{k-1}}:
  // second-order Taylor coefficient equals -Gamma^2 applied symbolically.
  const Vector x{0.6, 0.2, -0.9, 0.4}, y{-0.3, 1.1, 0.5, 0.7};
  for (int k = 1; k <= 4; ++k) {
    const double h = 1e-3;
    const auto second = (1.0 / (h * h)) * (lemma_gamma_action(k, x, y, h) - 2.0 * lemma_gamma_action(k, x, y, 0.0) +
                                             lemma_gamma_action(k, x, y, -h));
    const auto p = gegenbauer_zonal(k, 1.0, x);
    const auto symbolic = -1.0 * gamma_apply(gamma_apply(p)).evaluate(y);
    EXPECT_LE((second - symbolic).norm(), 1e-5 * std::max(1.0, symbolic.norm())) << "k=" << k;
  }
}

TEST(Recursion, Examples) {
  const auto b = recursion_check(1, 0.3, 2.0, 1.0, 0.7);
  EXPECT_LE(b.b, 1e-6);
  EXPECT_LE(b.c, 1e-6);
  EXPECT_TRUE(std::isnan(b.a));
  const auto c = recursion_check(2, 0.3, 2.0, 1.0, 0.7);
  EXPECT_LE(c.c, 1e-6);
  EXPECT_LE(c.max, 1e-6);
  for (int level = 1; level <= 3; ++level) EXPECT_LE(recursion_check(level, -0.4, 3.0, 0.8, 0.0).max, 1e-10);
  EXPECT_THROW(recursion_check(0, 0.3, 2.0, 1.0, 0.7), domain_error);
  EXPECT_THROW(recursion_check(4, 0.3, 2.0, 1.0, 0.7), domain_error);
}

TEST(Recursion, RandomPoints) {
  Sampler s(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int level = 1 + trial % 3;
    const double w = s.uniform(-0.9, 0.9), z = s.uniform(0.2, 8.0) * (trial % 2 ? 1 : -1);
    EXPECT_LE(recursion_check(level, w, z, s.alpha(), s.uniform(-pi, pi)).max, 1e-6);
  }
}
