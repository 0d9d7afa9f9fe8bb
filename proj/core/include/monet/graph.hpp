#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace monet {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Undirected edge with u < v. The weight is a capacity and is always > 0.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 1.0;

  Vertex other(Vertex x) const noexcept { return x == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Adjacency entry: neighbour plus the id of the connecting edge.
struct Incidence {
  Vertex neighbor;
  EdgeId edge;
};

// Immutable simple undirected graph with positive weights.
//
// Edges are stored in canonical order (sorted by (u, v) with u < v) so that
// two graphs with the same edge set are identical regardless of input order.
// Connectivity and vertex weights are computed once at construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Validates and canonicalises. Throws Error(kInvalidParameter) on
  /// self-loops, duplicates, out-of-range endpoints or non-positive weights.
  WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }

  std::span<const Incidence> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept;
  double average_degree() const noexcept;

  /// w(u): total weight of edges incident to u.
  double vertex_weight(Vertex v) const noexcept { return vertex_weights_[v]; }
  /// W: sum of all edge weights.
  double total_weight() const noexcept { return total_weight_; }

  bool connected() const noexcept { return connected_; }
  std::size_t component_count() const noexcept { return component_count_; }
  /// Component label per vertex, labels are 0..component_count()-1 in order
  /// of the smallest vertex of each component.
  std::span<const std::uint32_t> components() const noexcept { return component_of_; }

  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const noexcept;

  /// Copy of this graph without edge `id` (same vertex set).
  WeightedGraph without_edge(EdgeId id) const;

  /// Throws Error(kNotConnected) naming `what` if the graph is disconnected.
  void require_connected(std::string_view what) const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> adjacency_;
  std::vector<double> vertex_weights_;
  double total_weight_ = 0.0;
  std::vector<std::uint32_t> component_of_;
  std::size_t component_count_ = 0;
  bool connected_ = false;
};

/// Parses the weighted edge-list format: one "u v w" triple per line,
/// whitespace separated, '#' starts a comment. The vertex count is the
/// largest id plus one. Errors name the offending line.
WeightedGraph parse_graph(std::string_view text);
WeightedGraph read_graph_file(const std::string& path);

/// Canonical edge-list text (round-trips through parse_graph exactly).
std::string format_graph(const WeightedGraph& g);

/// 64-bit FNV-1a digest of the canonical text, as 16 hex digits.
std::string graph_digest(const WeightedGraph& g);

/// Edge boundary ∂S of a vertex subset.
struct CutSet {
  std::vector<Vertex> side;  // sorted, unique
  std::vector<EdgeId> boundary_edges;
  std::size_t boundary_size = 0;
  double boundary_weight = 0.0;
};

/// Throws Error(kInvalidCut) if `side` is empty or covers every vertex, and
/// Error(kInvalidParameter) for out-of-range ids.
CutSet edge_boundary(const WeightedGraph& g, std::span<const Vertex> side);

}  // namespace monet
