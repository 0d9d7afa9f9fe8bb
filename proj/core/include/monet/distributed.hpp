#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "monet/graph.hpp"
#include "monet/overlay.hpp"
#include "monet/spanning_tree.hpp"
#include "monet/verifier.hpp"

namespace monet {

/// Contiguous range of global tree indices under one master seed. Tree i of
/// the range uses tree_seed(master, first_index + i), whoever generates it.
struct SeedStream {
  std::uint64_t master = 0;
  std::uint64_t first_index = 0;

  std::uint64_t seed_for(std::size_t offset) const { return tree_seed(master, first_index + offset); }
};

/// Work unit of one worker: `count` trees from `stream`.
std::vector<SpanningTree> worker_generate_trees(const WeightedGraph& g, std::size_t count,
                                                const SeedStream& stream);

enum class VerificationKind { kMixingCover, kParallelCover };

std::string_view to_string(VerificationKind kind);

struct VerificationConfig {
  VerificationKind kind = VerificationKind::kMixingCover;
  CoverOptions cover;
  /// Parallel cover parameters; 0 selects 4n walks of ⌈4 ln n⌉ steps.
  std::size_t walk_count = 0;
  std::size_t walk_length = 0;
  /// Independent runs per round; the round passes only if all succeed.
  std::size_t repetitions = 1;
};

struct BuildConfig {
  VerificationConfig verification;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  WeightMode mode = WeightMode::kPlain;
  /// Defaults to ⌈log₂ n⌉ + 1.
  std::optional<std::size_t> round_cap;
};

struct BuildRound {
  std::size_t round = 0;      // 1-based
  std::size_t requested = 0;  // k for this round: 1, 2, 4, ...
  std::size_t returned = 0;
  std::size_t total_trees = 0;
  std::size_t distinct_edges = 0;
  /// Trees produced by each worker in this round.
  std::vector<std::size_t> per_worker;
  bool passed = false;
  /// One report per repetition.
  std::vector<CoverReport> verification;
};

struct BuildOrchestration {
  std::size_t worker_count = 0;
  std::uint64_t seed = 0;
  std::size_t round_cap = 0;
  std::vector<BuildRound> rounds;
  std::size_t total_trees = 0;
  bool success = false;
  std::string diagnostics;
  OverlayGraph overlay;
};

std::size_t default_round_cap(std::size_t n);

/// Controller loop: each round delegates the generation of k new trees to
/// the workers, unions them into the overlay, runs the configured check and
/// doubles k. Stops at the first passing round or at the round cap; a build
/// that never passes is returned with success == false. For a fixed seed the
/// result does not depend on the worker count.
BuildOrchestration orchestrate_build(std::shared_ptr<const WeightedGraph> g,
                                     const BuildConfig& config);

/// Runs the configured verification on an overlay topology.
bool run_verification(const WeightedGraph& overlay, const VerificationConfig& config,
                      std::uint64_t seed, std::vector<CoverReport>* reports = nullptr);

}  // namespace monet
