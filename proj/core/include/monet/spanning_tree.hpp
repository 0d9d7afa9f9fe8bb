#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "monet/graph.hpp"

namespace monet {

struct SpanningTree {
  /// n − 1 edge ids, in the order their far endpoint was first visited.
  std::vector<EdgeId> edges;
  Vertex start = 0;
  /// Steps the walk took until every vertex had been visited.
  std::uint64_t walk_length = 0;

  std::vector<EdgeId> sorted_edges() const;
};

/// Walk-length safety valve: 10^4 · n · ln n steps.
std::uint64_t default_walk_step_cap(std::size_t n);

/// Weighted random spanning tree by first-entrance edges of a random walk.
///
/// Starts at a vertex drawn uniformly from the seed, moves to v with
/// probability w(u,v)/w(u), and records the arrival edge of each vertex on
/// its first visit. The result is a deterministic function of (g, seed).
/// Throws Error(kNotConnected), Error(kDegenerateGraph) when n < 2, and
/// Error(kWalkLimit) if the walk exceeds `step_cap` without covering.
SpanningTree random_spanning_tree(const WeightedGraph& g, std::uint64_t seed,
                                  std::optional<std::uint64_t> step_cap = std::nullopt);

/// True if `edges` (ids into g) form a spanning tree of g.
bool is_spanning_tree(const WeightedGraph& g, const std::vector<EdgeId>& edges);

}  // namespace monet
