#include "monet/spanning_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "monet/error.hpp"
#include "monet/rng.hpp"
#include "monet/walk.hpp"

namespace monet {

WalkStepper::WalkStepper(const WeightedGraph& g, bool weighted)
    : graph_(&g), weighted_(weighted) {
  if (!weighted_) return;
  offsets_.assign(g.vertex_count() + 1, 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    offsets_[v + 1] = offsets_[v] + g.degree(v);
  }
  cumulative_.resize(offsets_.back());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    double running = 0.0;
    std::size_t i = offsets_[v];
    for (const auto& inc : g.neighbors(v)) {
      running += g.edge(inc.edge).weight;
      cumulative_[i++] = running;
    }
  }
}

Incidence WalkStepper::step(Vertex u, Rng& rng) const {
  const auto list = graph_->neighbors(u);
  if (!weighted_) return list[rng.below(list.size())];
  const double* begin = cumulative_.data() + offsets_[u];
  const double* end = cumulative_.data() + offsets_[u + 1];
  const double target = rng.uniform() * end[-1];
  auto it = std::upper_bound(begin, end, target);
  if (it == end) --it;
  return list[static_cast<std::size_t>(it - begin)];
}

std::vector<EdgeId> SpanningTree::sorted_edges() const {
  std::vector<EdgeId> out = edges;
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t default_walk_step_cap(std::size_t n) {
  const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  return static_cast<std::uint64_t>(std::ceil(1e4 * nn * std::log(nn)));
}

SpanningTree random_spanning_tree(const WeightedGraph& g, std::uint64_t seed,
                                  std::optional<std::uint64_t> step_cap) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw Error(ErrorCode::kDegenerateGraph, "random_spanning_tree needs at least 2 vertices");
  g.require_connected("random_spanning_tree");

  const std::uint64_t cap = step_cap.value_or(default_walk_step_cap(n));
  const WalkStepper stepper(g, /*weighted=*/true);
  Rng rng(seed);

  SpanningTree tree;
  tree.edges.reserve(n - 1);
  std::vector<char> visited(n, 0);
  Vertex current = static_cast<Vertex>(rng.below(n));
  tree.start = current;
  visited[current] = 1;
  std::size_t remaining = n - 1;
  std::uint64_t steps = 0;
  while (remaining > 0) {
    if (steps >= cap) {
      throw Error(ErrorCode::kWalkLimit,
                  "random walk did not cover the graph within " + std::to_string(cap) +
                      " steps (" + std::to_string(remaining) +
                      " vertices unvisited); edge weights may be too skewed");
    }
    const Incidence inc = stepper.step(current, rng);
    ++steps;
    current = inc.neighbor;
    if (!visited[current]) {
      visited[current] = 1;
      tree.edges.push_back(inc.edge);
      --remaining;
    }
  }
  tree.walk_length = steps;
  return tree;
}

bool is_spanning_tree(const WeightedGraph& g, const std::vector<EdgeId>& edges) {
  const std::size_t n = g.vertex_count();
  if (n == 0 || edges.size() != n - 1) return false;
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId id : edges) {
    if (id >= g.edge_count()) return false;
    const auto& e = g.edge(id);
    const Vertex a = find(e.u), b = find(e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

}  // namespace monet
