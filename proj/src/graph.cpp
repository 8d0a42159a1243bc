#include "dkb/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "dkb/errors.hpp"
#include "dkb/rng.hpp"

namespace dkb {

namespace {

std::uint64_t edge_key(std::uint32_t u, std::uint32_t v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> deg(n, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

Graph make_graph(std::size_t n,
                 std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw InvalidInput("make_graph: node id out of range");
    if (u == v) throw InvalidInput("make_graph: self-loop");
    if (u > v) std::swap(u, v);
    if (!seen.insert(edge_key(u, v)).second)
      throw InvalidInput("make_graph: duplicate edge");
  }
  std::sort(edges.begin(), edges.end());
  return Graph{n, std::move(edges)};
}

ShiftOperatorSet shift_operators(const Graph& g) {
  if (g.n == 0) throw InvalidInput("shift_operators: empty graph");
  const auto deg = g.degrees();
  for (std::size_t i = 0; i < g.n; ++i)
    if (deg[i] == 0)
      throw DegreeZero("shift_operators: node " + std::to_string(i) +
                       " is isolated");

  SymMatrix a(g.n);
  for (const auto& [u, v] : g.edges) a.set(u, v, 1.0);

  SymMatrix lap(g.n);
  std::vector<double> dvals(g.n);
  std::vector<double> dinv(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    dvals[i] = static_cast<double>(deg[i]);
    dinv[i] = 1.0 / std::sqrt(dvals[i]);
    lap.set(i, i, dvals[i]);
  }
  for (const auto& [u, v] : g.edges) lap.set(u, v, -1.0);

  SymMatrix lsym(g.n);
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = i; j < g.n; ++j)
      lsym.set(i, j, lap(i, j) * dinv[i] * dinv[j]);

  return ShiftOperatorSet{std::move(a), std::move(dvals), std::move(lap),
                          std::move(lsym)};
}

Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d >= n) throw InvalidInput("random_regular: need d < n");
  if ((n * d) % 2 != 0)
    throw InvalidInput("random_regular: n*d must be even");

  SplitMix64 rng(seed);
  constexpr int kMaxAttempts = 10000;

  std::vector<std::uint32_t> stubs;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    stubs.clear();
    for (std::uint32_t v = 0; v < n; ++v)
      for (std::size_t k = 0; k < d; ++k) stubs.push_back(v);

    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(n * d / 2);

    bool dead_end = false;
    std::vector<std::uint32_t> leftover;
    while (!stubs.empty()) {
      rng.shuffle(stubs);
      leftover.clear();
      bool progress = false;
      for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        std::uint32_t u = stubs[i];
        std::uint32_t v = stubs[i + 1];
        if (u > v) std::swap(u, v);
        if (u == v || !seen.insert(edge_key(u, v)).second) {
          leftover.push_back(stubs[i]);
          leftover.push_back(stubs[i + 1]);
          continue;
        }
        edges.emplace_back(u, v);
        progress = true;
      }
      if (!progress) {
        dead_end = true;
        break;
      }
      stubs.swap(leftover);
    }
    if (!dead_end) return make_graph(n, std::move(edges));
  }
  throw GenerationFailed("random_regular: retry budget exhausted");
}

std::optional<std::size_t> regularity_check(const Graph& g) {
  if (g.n == 0) return std::nullopt;
  const auto deg = g.degrees();
  for (std::size_t i = 1; i < g.n; ++i)
    if (deg[i] != deg[0]) return std::nullopt;
  return deg[0];
}

}  // namespace dkb
