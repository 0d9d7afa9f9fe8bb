#include "monet/generators.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "monet/error.hpp"
#include "monet/rng.hpp"

namespace monet {

WeightedGraph complete_graph(std::size_t n, double weight) {
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v, weight});
  }
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph path_graph(std::size_t n, double weight) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({v - 1, v, weight});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph cycle_graph(std::size_t n, double weight) {
  if (n < 3) throw Error(ErrorCode::kInvalidParameter, "cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({v - 1, v, weight});
  edges.push_back({0, static_cast<Vertex>(n - 1), weight});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph star_graph(std::size_t n, double weight) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({0, v, weight});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph random_regular_graph(std::size_t n, std::size_t degree, std::uint64_t seed) {
  if (degree < 1 || degree >= n) {
    throw Error(ErrorCode::kInvalidParameter, "regular graph needs 1 <= degree < n");
  }
  std::vector<Vertex> stubs;
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < degree; ++i) stubs.push_back(v);
  }
  if (stubs.size() % 2 == 1) stubs.push_back(0);

  Rng rng(seed);
  constexpr int kPairingAttempts = 200;
  for (int attempt = 0; attempt < kPairingAttempts; ++attempt) {
    for (std::size_t i = stubs.size() - 1; i > 0; --i) {
      std::swap(stubs[i], stubs[rng.below(i + 1)]);
    }
    std::set<std::pair<Vertex, Vertex>> seen;
    std::vector<Edge> edges;
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      Vertex a = stubs[i], b = stubs[i + 1];
      if (a == b) {
        simple = false;
        break;
      }
      if (a > b) std::swap(a, b);
      if (!seen.emplace(a, b).second) {
        simple = false;
        break;
      }
      edges.push_back({a, b, 1.0});
    }
    if (!simple) continue;
    WeightedGraph g(n, std::move(edges));
    if (g.connected()) return g;
  }

  // Whole-pairing rejection gets hopeless as degree grows. Pair stubs one at a
  // time instead, drawing only pairs that keep the graph simple.
  constexpr int kStepwiseAttempts = 1000;
  for (int attempt = 0; attempt < kStepwiseAttempts; ++attempt) {
    std::vector<Vertex> open = stubs;
    std::set<std::pair<Vertex, Vertex>> seen;
    std::vector<Edge> edges;
    bool stuck = false;
    while (!open.empty() && !stuck) {
      bool placed = false;
      for (int tries = 0; tries < 64 * static_cast<int>(degree) + 64; ++tries) {
        const std::size_t i = rng.below(open.size());
        const std::size_t j = rng.below(open.size());
        Vertex a = open[i], b = open[j];
        if (i == j || a == b) continue;
        if (a > b) std::swap(a, b);
        if (seen.count({a, b})) continue;
        seen.emplace(a, b);
        edges.push_back({a, b, 1.0});
        const std::size_t hi = std::max(i, j), lo = std::min(i, j);
        std::swap(open[hi], open.back());
        open.pop_back();
        std::swap(open[lo], open.back());
        open.pop_back();
        placed = true;
        break;
      }
      stuck = !placed;
    }
    if (stuck) continue;
    WeightedGraph g(n, std::move(edges));
    if (g.connected()) return g;
  }
  throw Error(ErrorCode::kInvalidParameter,
              "no simple connected pairing found for n=" + std::to_string(n) +
                  ", degree=" + std::to_string(degree));
}

WeightedGraph random_connected_graph(std::size_t n, double edge_probability, double min_weight,
                                     double max_weight, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::kInvalidParameter, "graph needs at least 1 vertex");
  if (!(min_weight > 0.0) || max_weight < min_weight) {
    throw Error(ErrorCode::kInvalidParameter, "weights must satisfy 0 < min <= max");
  }
  Rng rng(seed);
  auto weight = [&] { return min_weight + (max_weight - min_weight) * rng.uniform(); };
  std::set<std::pair<Vertex, Vertex>> present;
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    const auto parent = static_cast<Vertex>(rng.below(v));
    present.emplace(parent, v);
    edges.push_back({parent, v, weight()});
  }
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (present.count({u, v})) continue;
      if (rng.bernoulli(edge_probability)) edges.push_back({u, v, weight()});
    }
  }
  return WeightedGraph(n, std::move(edges));
}

}  // namespace monet
