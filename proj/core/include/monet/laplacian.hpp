#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "monet/graph.hpp"

namespace monet {

// Dense weighted Laplacian: L[u][u] = w(u), L[u][v] = -w(u,v).
class LaplacianMatrix {
 public:
  explicit LaplacianMatrix(const WeightedGraph& g);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t row, std::size_t col) const { return values_[row * n_ + col]; }
  /// Row-major storage.
  std::span<const double> values() const noexcept { return values_; }

  /// The principal minor L_x with row and column `removed` deleted, row-major.
  std::vector<double> minor(std::size_t removed) const;

  /// x^T L x by dense multiplication.
  double quadratic_form(std::span<const double> x) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// x^T L x evaluated as Σ_{(u,v)∈E} w(u,v)(x_u − x_v)², in edge order.
double laplacian_quadratic_form(const WeightedGraph& g, std::span<const double> x);

/// κ(G), the sum over spanning trees of the product of their edge weights.
struct TreeWeight {
  double log_value = 0.0;  // natural log; -inf when κ = 0
  double value = 0.0;      // exp(log_value); +inf if it overflows a double
};

/// κ(G) (or κ(G∖e)) as det L_0 via Cholesky. The graph must be connected;
/// removing a bridge gives κ = 0. Throws Error(kDegenerateGraph) for n < 2.
TreeWeight spanning_tree_weight(const WeightedGraph& g,
                                std::optional<EdgeId> excluded_edge = std::nullopt);

enum class InclusionMethod {
  kAuto,              // determinant ratio up to kDirectDeterminantLimit vertices
  kDeterminantRatio,  // one factorisation per edge: 1 − det L_0(G∖e)/det L_0(G)
  kRankOneUpdate,     // 1 − det ratio via the determinant lemma on one inverse
};

inline constexpr std::size_t kDirectDeterminantLimit = 64;

struct EdgeStatistics {
  /// P[e ∈ T] for a weighted random spanning tree, indexed by EdgeId.
  std::vector<double> inclusion_probability;
  /// Effective resistance between the endpoints of each edge, from the
  /// inverse of L_0; independent of the determinant computation above.
  std::vector<double> effective_resistance;
  /// Conductance of each edge (its weight).
  std::vector<double> conductance;
  /// Σ_e P[e ∈ T] / |E|.
  double average_probability = 0.0;
  InclusionMethod method = InclusionMethod::kAuto;
  /// Reciprocal condition estimate of the factored minor L_0(G).
  double reciprocal_condition = 0.0;
};

/// Throws Error(kNotConnected) on disconnected input and
/// Error(kNumericalFailure) if L_0 cannot be factored.
EdgeStatistics edge_statistics(const WeightedGraph& g,
                               InclusionMethod method = InclusionMethod::kAuto);

/// Edge ids of every bridge (edges whose removal disconnects the graph).
std::vector<EdgeId> bridges(const WeightedGraph& g);

}  // namespace monet
