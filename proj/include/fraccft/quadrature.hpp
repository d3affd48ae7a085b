#ifndef FRACCFT_QUADRATURE_HPP
#define FRACCFT_QUADRATURE_HPP

// Gauss-Legendre rules and a reduction driver whose summation order does not
// depend on the number of worker threads.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"

namespace fraccft {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b] (Newton iteration on P_n).
inline GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0) {
  if (n < 1) throw domain_error("Gauss-Legendre needs at least one node");
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      // recompute derivative at the converged node
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.nodes[i] = mid - half * z;
    r.nodes[n - 1 - i] = mid + half * z;
    r.weights[i] = r.weights[n - 1 - i] = half * w;
  }
  return r;
}

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
inline GaussRule composite_gauss_legendre(int per_panel, int panels, double a, double b) {
  GaussRule out;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const auto g = gauss_legendre(per_panel, a + p * h, a + (p + 1) * h);
    out.nodes.insert(out.nodes.end(), g.nodes.begin(), g.nodes.end());
    out.weights.insert(out.weights.end(), g.weights.begin(), g.weights.end());
  }
  return out;
}

/// Thread count: explicit request, else FRACCLIFFT_THREADS, else hardware concurrency.
inline unsigned resolve_threads(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  if (const char* env = std::getenv("FRACCLIFFT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Sum `body(i, acc)` over i in [0, count). Work is split into fixed chunks whose
/// partial sums are combined pairwise in chunk order, so the result is bitwise
/// identical for every thread count. `Acc` must be default-constructible via
/// `make()` and support `+=`.
template <typename Acc, typename Make, typename Body>
Acc deterministic_reduce(std::size_t count, unsigned threads, Make make, Body body,
                         std::size_t chunk = 2048) {
  const std::size_t nchunks = std::max<std::size_t>(1, (count + chunk - 1) / chunk);
  std::vector<Acc> partial;
  partial.reserve(nchunks);
  for (std::size_t c = 0; c < nchunks; ++c) partial.push_back(make());

  auto run_chunk = [&](std::size_t c) {
    const std::size_t lo = c * chunk, hi = std::min(count, lo + chunk);
    for (std::size_t i = lo; i < hi; ++i) body(i, partial[c]);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(nchunks)));
  if (threads == 1) {
    for (std::size_t c = 0; c < nchunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t c; (c = next.fetch_add(1)) < nchunks;) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }
  for (std::size_t stride = 1; stride < nchunks; stride *= 2)
    for (std::size_t c = 0; c + stride < nchunks; c += 2 * stride) partial[c] += partial[c + stride];
  return std::move(partial[0]);
}

/// Apply `body(i)` for i in [0, count) on `threads` workers; order of side effects unspecified.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace fraccft

#endif  // FRACCFT_QUADRATURE_HPP
