#pragma once

#include <vector>

#include "monet/graph.hpp"
#include "monet/rng.hpp"

namespace monet {

// One step of a random walk: from u, the next vertex is a neighbour chosen
// with probability w(u,v)/w(u) (weighted) or 1/deg(u) (uniform).
class WalkStepper {
 public:
  WalkStepper(const WeightedGraph& g, bool weighted);

  const WeightedGraph& graph() const noexcept { return *graph_; }
  bool weighted() const noexcept { return weighted_; }

  /// Returns the incidence taken. `u` must have at least one neighbour.
  Incidence step(Vertex u, Rng& rng) const;

 private:
  const WeightedGraph* graph_;
  bool weighted_;
  // Prefix sums of incident weights, laid out like the adjacency array.
  std::vector<double> cumulative_;
  std::vector<std::size_t> offsets_;
};

}  // namespace monet
