#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monet/graph.hpp"
#include "monet/laplacian.hpp"
#include "monet/spanning_tree.hpp"

namespace monet {

enum class WeightMode {
  kPlain,             // overlay weight = base weight
  kResistanceScaled,  // overlay weight = multiplicity · w(e) / (k · p_e)
};

std::string_view to_string(WeightMode mode);
WeightMode parse_weight_mode(std::string_view text);

// Union of k spanning trees of a base graph, U_G^k.
//
// graph() is the overlay topology as a WeightedGraph on the same vertex set,
// carrying overlay weights; its edge i corresponds to base edge
// base_edge(i) and was contributed by multiplicity(i) of the k trees.
class OverlayGraph {
 public:
  /// `multiplicity` is indexed by base EdgeId; zero entries are absent.
  /// Resistance-scaled mode needs `stats` for the base graph.
  OverlayGraph(std::shared_ptr<const WeightedGraph> base, std::vector<std::uint32_t> multiplicity,
               std::size_t tree_count, WeightMode mode, std::uint64_t seed,
               const EdgeStatistics* stats = nullptr);

  /// Overlay topology with explicit per-edge weights (used when loading).
  OverlayGraph(std::shared_ptr<const WeightedGraph> base, std::vector<std::uint32_t> multiplicity,
               std::vector<double> weights, std::size_t tree_count, WeightMode mode,
               std::uint64_t seed);

  /// The base graph itself viewed as an overlay: every edge once, plain
  /// weights, tree_count() == 0.
  static OverlayGraph from_base(std::shared_ptr<const WeightedGraph> base);

  const WeightedGraph& base() const noexcept { return *base_; }
  std::shared_ptr<const WeightedGraph> base_ptr() const noexcept { return base_; }
  const WeightedGraph& graph() const noexcept { return graph_; }

  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  std::size_t distinct_edge_count() const noexcept { return graph_.edge_count(); }
  std::size_t tree_count() const noexcept { return tree_count_; }
  WeightMode mode() const noexcept { return mode_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::uint32_t multiplicity(EdgeId overlay_edge) const { return multiplicity_.at(overlay_edge); }
  EdgeId base_edge(EdgeId overlay_edge) const { return base_edge_.at(overlay_edge); }
  std::span<const std::uint32_t> multiplicities() const noexcept { return multiplicity_; }

  friend bool operator==(const OverlayGraph& a, const OverlayGraph& b) {
    return a.tree_count_ == b.tree_count_ && a.mode_ == b.mode_ && a.graph_ == b.graph_ &&
           a.multiplicity_ == b.multiplicity_ && *a.base_ == *b.base_;
  }

 private:
  void assemble(const std::vector<std::uint32_t>& by_base, const std::vector<double>& weights);

  std::shared_ptr<const WeightedGraph> base_;
  WeightedGraph graph_;
  std::vector<std::uint32_t> multiplicity_;
  std::vector<EdgeId> base_edge_;
  std::size_t tree_count_ = 0;
  WeightMode mode_ = WeightMode::kPlain;
  std::uint64_t seed_ = 0;
};

/// Adds trees into per-base-edge multiplicities. Addition commutes, so the
/// order trees arrive in does not matter.
class OverlayAccumulator {
 public:
  explicit OverlayAccumulator(std::shared_ptr<const WeightedGraph> base);

  void add(const SpanningTree& tree);
  std::size_t tree_count() const noexcept { return trees_; }
  const std::vector<std::uint32_t>& multiplicity() const noexcept { return multiplicity_; }

  OverlayGraph finish(WeightMode mode, std::uint64_t seed,
                      const EdgeStatistics* stats = nullptr) const;

 private:
  std::shared_ptr<const WeightedGraph> base_;
  std::vector<std::uint32_t> multiplicity_;
  std::size_t trees_ = 0;
};

/// Seed of tree `index` under master seed `seed`.
std::uint64_t tree_seed(std::uint64_t seed, std::uint64_t index);

/// Union of k weighted random spanning trees; tree i uses tree_seed(seed, i).
/// Throws Error(kInvalidParameter) for k == 0.
OverlayGraph build_overlay(std::shared_ptr<const WeightedGraph> g, std::size_t k,
                           std::uint64_t seed, WeightMode mode = WeightMode::kPlain,
                           const EdgeStatistics* stats = nullptr);
OverlayGraph build_overlay(const WeightedGraph& g, std::size_t k, std::uint64_t seed,
                           WeightMode mode = WeightMode::kPlain);

/// "u v w m" lines preceded by a one-line JSON header comment.
std::string format_overlay(const OverlayGraph& o);
/// Parses format_overlay output against its base graph; checks the base
/// digest and that every edge exists in the base.
OverlayGraph parse_overlay(std::string_view text, std::shared_ptr<const WeightedGraph> base);
OverlayGraph read_overlay_file(const std::string& path, std::shared_ptr<const WeightedGraph> base);

}  // namespace monet
