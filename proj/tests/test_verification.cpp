#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fraccft/verification.hpp"

using namespace fraccft;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST(Samples, RadiiAndAnglesInRange) {
  for (int m : {2, 3, 5}) {
    const auto pairs = sample_pairs(m, 200, 7);
    ASSERT_EQ(pairs.size(), 200u);
    for (const auto& s : pairs) {
      EXPECT_GE(s.x.norm(), 0.3 - 1e-12);
      EXPECT_LE(s.x.norm(), 3.0 + 1e-12);
      EXPECT_GE(s.y.norm(), 0.3 - 1e-12);
      EXPECT_LE(s.y.norm(), 3.0 + 1e-12);
      const double c = inner_vectors(s.x, s.y) / (s.x.norm() * s.y.norm());
      EXPECT_LE(std::abs(c), std::cos(0.05) + 1e-12);
    }
  }
  const auto a = sample_pairs(3, 5, 1), b = sample_pairs(3, 5, 1);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(a[i].x.norm(), b[i].x.norm());
}

TEST(Pde, FirstOrderSystem) {
  for (int m : {2, 3, 4})
    for (auto [a, b] : {std::pair{pi / 2, pi / 2}, {1.0, 0.0}, {-2.2, 1.1}, {0.4, -2.7}}) {
      const KernelParams p(a, b, m);
      const auto rep = check_pde_first_order(p, sample_pairs(m, 8, 3), 1e-4, m == 2 ? 1e-6 : 1e-5);
      EXPECT_TRUE(rep.pass) << "m=" << m << " a=" << a << " b=" << b << " r=" << rep.max_residual;
    }
}

TEST(Pde, FirstOrderFailsForWrongBeta) {
  // the identity pairs K_b with K_{-b}; using K_b on both sides is wrong unless b = 0 or pi
  const KernelParams p(1.1, 0.9, 2);
  const auto k = kernel_fn(p);
  const auto s = sample_pairs(2, 4, 9);
  double worst = 0.0;
  for (const auto& pr : s) {
    const auto X = Multivector::from_vector(pr.x), Y = Multivector::from_vector(pr.y);
    const auto lhs = (I * std::sin(p.alpha)) * dirac_y_fd(k, pr.x, pr.y, 1e-4) + std::cos(p.alpha) * (Y * k(pr.x, pr.y));
    const auto rhs = std::exp(I * p.beta) * (k(pr.x, pr.y) * X);
    worst = std::max(worst, (lhs - rhs).norm());
  }
  EXPECT_GT(worst, 1e-2);
}

TEST(Pde, HattedSystemMatchesFirstOrderUpToPhase) {
  for (int m : {2, 4}) {
    const KernelParams p(-1.3, 0.7, m);
    const auto rep = check_pde_hatted(p, sample_pairs(m, 8, 4), 1e-4, 1e-6);
    EXPECT_TRUE(rep.pass) << rep.max_residual;
    // (i sin a d_y + cos a y) K = phase * (i sin a d_y) K^, so the residuals differ by the phase
    for (const auto& s : sample_pairs(m, 8, 5)) {
      const auto full = pde_first_order_residual(p, s.x, s.y, 1e-4);
      const auto hat = pde_hatted_residual(p, s.x, s.y, 1e-4);
      const complex phase = gaussian_phase(p.alpha, s.x.norm_squared() + s.y.norm_squared());
      EXPECT_LE((full.left - phase * hat.left).norm(), 1e-7);
    }
  }
}

TEST(Pde, SecondOrderSystem) {
  for (int m : {2, 3, 4}) {
    const KernelParams p(2.0, -0.6, m);
    const auto rep = check_pde_second_order(p, sample_pairs(m, 6, 11));
    EXPECT_TRUE(rep.pass) << "m=" << m << " " << nlohmann::json(rep).dump();
  }
}

TEST(Pde, CentralDifferencesConvergeAtOrderTwo) {
  for (int m : {2, 4}) {
    const auto rep = check_fd_convergence(KernelParams(0.8, 1.9, m), sample_pairs(m, 6, 2), 1e-3);
    const double ratio = rep.metadata["ratio"];
    EXPECT_GE(ratio, 2.0);
    EXPECT_LE(ratio, 8.0);
    EXPECT_TRUE(rep.pass);
  }
}

TEST(Bound, GridMaximumIsStableUnderRefinement) {
  for (int m : {2, 4}) {
    const auto rep = check_bound_stability(KernelParams(pi / 3, pi / 4, m), 50);
    EXPECT_TRUE(rep.pass) << nlohmann::json(rep).dump();
    EXPECT_TRUE(std::isfinite(rep.metadata["ratio"].get<double>()));
  }
}

TEST(Report, JsonShape) {
  ResidualReport r{"x", {{"m", 2}}, 0.5, 1.0};
  r.finalize();
  const nlohmann::json j = r;
  for (const char* key : {"name", "params", "max_residual", "tolerance", "pass", "metadata"}) EXPECT_TRUE(j.contains(key));
  EXPECT_TRUE(j["pass"].get<bool>());
  r.max_residual = NAN;
  r.finalize();
  EXPECT_FALSE(r.pass);
}

TEST(Suite, AllChecksPass) {
  const auto reports = run_suite();
  EXPECT_EQ(reports.size(), suite_check_names().size());
  for (const auto& r : reports) EXPECT_TRUE(r.pass) << nlohmann::json(r).dump();
}

TEST(Suite, DeterministicAcrossRunsAndThreads) {
  SuiteConfig a;
  a.seed = 99;
  a.threads = 1;
  SuiteConfig b = a;
  b.threads = 4;
  const auto ra = run_suite(a), rb = run_suite(b), rc = run_suite(a);
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    EXPECT_EQ(nlohmann::json(ra[i]).dump(), nlohmann::json(rb[i]).dump());
    EXPECT_EQ(nlohmann::json(ra[i]).dump(), nlohmann::json(rc[i]).dump());
  }
}

TEST(Suite, OnlyFilterSelectsByPrefix) {
  SuiteConfig c;
  c.only = "pde";
  const auto reports = run_suite(c);
  EXPECT_EQ(reports.size(), 4u);
  for (const auto& r : reports) EXPECT_EQ(r.name.rfind("pde", 0), 0u);
  c.only = "no_such_check";
  EXPECT_TRUE(run_suite(c).empty());
}

TEST(Suite, PerturbedKernelFailsRouteAgreement) {
  SuiteConfig c;
  c.only = "route_agreement";
  c.kernel_perturbation = 1e-6;
  const auto reports = run_suite(c);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_FALSE(reports[0].pass);
}
