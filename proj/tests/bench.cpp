// Crude timing harness for the dense kernels (not part of the test suite).
#include <chrono>
#include <cstdio>
#include <string>

#include "dkb/graph.hpp"
#include "dkb/kernels.hpp"
#include "dkb/linalg.hpp"
#include "dkb/rng.hpp"

using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::stoul(argv[1]) : 300;
  std::printf("kernels: %s\n", dkb::kern::active().name);

  dkb::SplitMix64 rng(7);
  dkb::SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.set(i, j, rng.next_in(-1.0, 1.0));

  auto t0 = Clock::now();
  const dkb::Spectrum s = dkb::eig_sym(m);
  std::printf("eig_sym(%zu): %.1f ms (lambda_max=%.6f)\n", n, ms_since(t0),
              s.eigenvalues.back());

  t0 = Clock::now();
  const dkb::EigExtremes e = dkb::eig_extremes(m);
  std::printf("eig_extremes(%zu): %.1f ms (%.6f, %.6f)\n", n, ms_since(t0),
              e.min, e.max);

  t0 = Clock::now();
  const dkb::Graph g = dkb::random_regular(n, 30 < n ? 30 : n / 2, 42);
  std::printf("random_regular(%zu): %.1f ms (%zu edges)\n", n, ms_since(t0),
              g.edges.size());
  return 0;
}
