#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "monet/graph.hpp"
#include "monet/overlay.hpp"

namespace monet {

// Closed-form monitoring quantities. N is the node count, C the number of
// non-monitoring nodes, hops the walk length of a whole route; the worked
// configuration (r = 2, l = 6) evaluates the product up to 18 = (r+1)·l.

/// 1 − ∏_{i=0}^{hops} (C − i)/(N − i): probability that a route whose
/// hops + 1 counted vertices are distinct and uniform meets a monitor.
/// Factors with C − i < 0 are clamped to 0. Throws Error(kDomain) unless
/// 0 <= C <= N and hops < N.
double prob_route_monitored(std::size_t N, std::size_t C, std::size_t hops);

/// Same event when each of `visits` vertices is an independent uniform draw
/// (walks allowed to revisit): 1 − (C/N)^visits.
double prob_route_monitored_independent(std::size_t N, std::size_t C, std::size_t visits);

/// β^t, the bound on a t-step walk staying inside the non-monitoring set.
double confinement_bound(double beta, std::size_t t);

struct UnmonitoredBound {
  double real = 0.0;          // target^{1/t} · N
  std::size_t rounded = 0;    // nearest integer
  std::size_t floor = 0;      // ⌊real⌋
};

/// Largest C for which β^t <= target, i.e. C <= target^{1/t}·N.
UnmonitoredBound max_unmonitored_bound(std::size_t N, std::size_t t, double target);

struct ChernoffBound {
  double mean = 0.0;   // μ = t·(N − C)/N, expected monitors on the path
  double bound = 0.0;  // e^{−2δ²/t} bounding Pr[X <= μ − δ]
};

/// Throws Error(kDomain) unless 0 < δ < t − μ.
ChernoffBound chernoff_tail_bound(std::size_t N, std::size_t C, std::size_t t, double delta);

/// log_base(N)/N_mix. The uniform choice of r among r_max lengths cancels,
/// so r_max only has to be >= 1. Throws Error(kDomain) if N_mix < log N.
double path_probability(std::size_t N, std::size_t N_mix, std::size_t r_max = 1, double log_base = 2.0);

struct SystemObservation {
  std::size_t node_count = 0;      // N
  std::size_t mix_count = 0;       // N_mix, nodes eligible as intermediates
  std::size_t message_count = 0;   // N_msg
  std::size_t monitor_count = 0;   // N_mntr
  std::size_t max_intermediates = 1;
  double log_base = 2.0;
};

struct HiddenStateReport {
  double path_probability = 0.0;
  /// Natural log of the product over all messages.
  double log_probability = 0.0;
  /// exp(log_probability) when it does not underflow.
  std::optional<double> probability;
  /// The two per-node monitoring probabilities 1/N_mntr and 1/N.
  std::optional<double> monitor_probability_per_monitor;
  double monitor_probability_per_node = 0.0;
  std::size_t message_count = 0;
};

/// ∏_{x=1}^{N_msg} log(N)/N_mix, in log space. Throws for N_msg < 1.
HiddenStateReport hidden_state_probability(const SystemObservation& obs);

// ---------------------------------------------------------------------------
// Routing betweenness

/// Row-stochastic per-hop transition rule R(u, ·).
class RoutingKernel {
 public:
  virtual ~RoutingKernel() = default;
  virtual std::size_t vertex_count() const = 0;
  /// (v, R(u, v)) for every v with positive probability.
  virtual std::vector<std::pair<Vertex, double>> row(Vertex u) const = 0;
  virtual std::string name() const = 0;
};

/// Uniform over the neighbours of u.
class UniformNeighborKernel final : public RoutingKernel {
 public:
  explicit UniformNeighborKernel(const WeightedGraph& g) : g_(&g) {}
  std::size_t vertex_count() const override { return g_->vertex_count(); }
  std::vector<std::pair<Vertex, double>> row(Vertex u) const override;
  std::string name() const override { return "uniform-neighbor"; }

 private:
  const WeightedGraph* g_;
};

/// Proportional to incident edge weights.
class WeightedNeighborKernel final : public RoutingKernel {
 public:
  explicit WeightedNeighborKernel(const WeightedGraph& g) : g_(&g) {}
  std::size_t vertex_count() const override { return g_->vertex_count(); }
  std::vector<std::pair<Vertex, double>> row(Vertex u) const override;
  std::string name() const override { return "weighted-neighbor"; }

 private:
  const WeightedGraph* g_;
};

/// Dense n×n row-major matrix.
class MatrixKernel final : public RoutingKernel {
 public:
  MatrixKernel(std::size_t n, std::vector<double> entries);
  std::size_t vertex_count() const override { return n_; }
  std::vector<std::pair<Vertex, double>> row(Vertex u) const override;
  std::string name() const override { return "matrix"; }

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

struct RbcTable {
  Vertex source = 0;
  Vertex destination = 0;
  std::size_t segment_hops = 0;  // l
  std::size_t segments = 0;      // r + 1
  std::string kernel;
  /// δ_{s,t}(v) = Σ_j P[v is hit during segment j]; δ(s) = 1.
  std::vector<double> delta;
  /// per_segment[j][v] = P[v is hit during segment j].
  std::vector<std::vector<double>> per_segment;
  /// Σ_h P[walk is at v after h hops], h = 1..segments·l.
  std::vector<double> expected_visits;
  /// occupancy[h][v] = P[walk is at v after h hops], h = 0..segments·l.
  std::vector<std::vector<double>> occupancy;
  /// predecessors[v]: vertices u reachable before the last hop with R(u,v) > 0.
  std::vector<std::vector<Vertex>> predecessors;
};

/// Exact dynamic program over the (r+1)·l hops of a Valiant route from s.
/// Throws Error(kInvalidKernel) if a kernel row has a negative entry or does
/// not sum to 1 within 1e-9.
RbcTable rbc_table(const RoutingKernel& kernel, Vertex s, Vertex t, std::size_t segment_hops,
                   std::size_t segments);

// ---------------------------------------------------------------------------
// Anonymity and attack cost

struct AnonymityReport {
  std::vector<double> probabilities;
  double entropy = 0.0;          // H(X), bits
  double max_entropy = 0.0;      // H_M = log₂ N
  double degree = 0.0;           // d = H / H_M
};

/// Throws Error(kDomain) for N < 2, negative or non-finite entries, or a
/// sum further than 1e-9 from 1.
AnonymityReport anonymity_degree(std::span<const double> p);

struct AttackCostReport {
  std::size_t node_count = 0;
  std::size_t attacker_count = 0;
  std::size_t max_degree = 0;
  /// d_max · N dummy messages for cover traffic on every edge.
  std::size_t cover_traffic_messages = 0;
  /// (n/c)² · ln n rounds for a predecessor attack.
  double predecessor_rounds = 0.0;
  /// Walk hops of one route, (r+1)·l.
  std::size_t route_hops = 0;
  /// predecessor_rounds / route_hops.
  double rounds_per_route_hop = 0.0;
};

double predecessor_attack_rounds(std::size_t n, std::size_t c);

/// Requires 1 <= c < n.
AttackCostReport attack_cost_report(const WeightedGraph& overlay, std::size_t attacker_count,
                                    std::size_t route_hops);
AttackCostReport attack_cost_report(const OverlayGraph& overlay, std::size_t attacker_count,
                                    std::size_t route_hops);

/// ⌈N/l⌉ monitors; the order N/log N is what matters, the constant is ours.
std::size_t monitor_count_estimate(std::size_t N, std::size_t l);

}  // namespace monet
