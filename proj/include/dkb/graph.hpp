#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dkb/matrix.hpp"

namespace dkb {

/// Simple undirected graph: node ids in [0, n), edges stored as normalized
/// (u < v) pairs in sorted order. No self-loops, no multi-edges.
struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  std::vector<std::size_t> degrees() const;
};

/// Validate and normalize an edge set (sorts, rejects loops/dups/bad ids).
Graph make_graph(std::size_t n,
                 std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

/// Adjacency A, degree diagonal D, Laplacian L = D - A, and the symmetric
/// normalized Laplacian L_sym = D^{-1/2} L D^{-1/2}.
struct ShiftOperatorSet {
  SymMatrix adjacency;
  std::vector<double> degree;
  SymMatrix laplacian;
  SymMatrix laplacian_sym;
};

/// Throws DegreeZero if any node is isolated.
ShiftOperatorSet shift_operators(const Graph& g);

/// Uniform-ish random d-regular graph via stub pairing: d half-edges per
/// node, repeated shuffle-and-pair passes recycling the stubs of rejected
/// (self-loop / duplicate) pairs, full restart when a pass makes no
/// progress. Deterministic for a fixed seed; gives up after 10000 restarts.
Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

/// The common degree if the graph is regular, otherwise nullopt.
std::optional<std::size_t> regularity_check(const Graph& g);

}  // namespace dkb
