#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "monet/expansion.hpp"
#include "monet/graph.hpp"
#include "monet/overlay.hpp"

namespace monet {

// ---------------------------------------------------------------------------
// Cover tests

/// How the mixing-rate walk picks its next vertex.
enum class NeighborRule {
  kCurrentVertex,   // uniform over the neighbours of the current vertex
  kAccumulatedSet,  // uniform over Γ' of every vertex visited so far
};

std::string_view to_string(NeighborRule rule);

struct CoverOptions {
  /// Length cap L = cap_factor · n · ln n.
  double cap_factor = 10.0;
  NeighborRule rule = NeighborRule::kCurrentVertex;
  /// Step proportionally to overlay weights instead of uniformly.
  bool weighted = false;
};

struct WalkDetail {
  Vertex start = 0;
  std::uint64_t length = 0;
  std::size_t visited = 0;  // distinct vertices seen by this walk
};

struct CoverReport {
  std::size_t vertex_count = 0;
  std::size_t visited_count = 0;
  /// Steps taken (single walk) or steps per walk (parallel mode).
  std::uint64_t walk_length = 0;
  std::uint64_t length_cap = 0;
  bool success = false;
  bool parallel = false;
  NeighborRule rule = NeighborRule::kCurrentVertex;
  bool weighted = false;
  double cap_factor = 0.0;
  /// Per-walk detail; one entry for the single-walk test.
  std::vector<WalkDetail> walks;
};

std::uint64_t cover_length_cap(std::size_t n, double cap_factor);

/// Single walk of at most L steps counting first visits; success iff all n
/// vertices are visited. Throws Error(kInvalidParameter) if cap_factor <= 0
/// and Error(kNotConnected) for disconnected input.
CoverReport mixing_cover_test(const WeightedGraph& overlay, std::uint64_t seed,
                              const CoverOptions& options = {});
CoverReport mixing_cover_test(const OverlayGraph& overlay, std::uint64_t seed,
                              const CoverOptions& options = {});

/// walk_count independent walks of walk_length steps from seeded uniform
/// starts; success iff the union of their visits covers V.
CoverReport parallel_cover_test(const WeightedGraph& overlay, std::size_t walk_count,
                                std::size_t walk_length, std::uint64_t seed,
                                bool weighted = false);
CoverReport parallel_cover_test(const OverlayGraph& overlay, std::size_t walk_count,
                                std::size_t walk_length, std::uint64_t seed,
                                bool weighted = false);

// ---------------------------------------------------------------------------
// Spectral approximation

struct SpectralOptions {
  double epsilon = 0.5;
  std::size_t probes = 200;
  std::uint64_t seed = 0;
  /// Extreme generalised eigenvalues are computed when n <= exact_limit.
  std::size_t exact_limit = 64;
};

struct SpectralReport {
  double epsilon = 0.0;
  std::size_t probes_requested = 0;
  std::size_t probes_used = 0;
  std::size_t probes_skipped = 0;
  /// Range of x^T L' x / x^T L x over the probes that were used.
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  bool has_eigen_extremes = false;
  double eigen_min = 0.0;
  double eigen_max = 0.0;
  /// False when the overlay uses plain weights; the approximation guarantee
  /// is stated for resistance-scaled sampling.
  bool resistance_scaled = false;
  bool pass = false;
  std::vector<std::string> notes;
};

/// Compares quadratic forms of the base Laplacian L and the overlay
/// Laplacian L' on random unit probes orthogonal to the all-ones vector,
/// plus the exact extreme generalised eigenvalues for small n. Passes iff
/// every observed ratio lies in [1 − ε, 1 + ε]. Requires 1/√n <= ε <= 1.
SpectralReport spectral_approximation_check(const WeightedGraph& base, const OverlayGraph& overlay,
                                            const SpectralOptions& options);
/// Same check for two Laplacians on one vertex set.
SpectralReport spectral_approximation_check(const WeightedGraph& base, const WeightedGraph& approx,
                                            bool resistance_scaled, const SpectralOptions& options);

// ---------------------------------------------------------------------------
// Cut approximation

struct CutApproximationReport {
  double alpha = 0.0;
  /// min over nonempty A ⊊ V of |∂_U A| · α · ln n / |∂_G A|.
  double min_ratio = 0.0;
  std::vector<Vertex> witness;
  std::size_t witness_overlay_boundary = 0;
  std::size_t witness_base_boundary = 0;
  std::size_t cuts_checked = 0;
  bool pass = false;
};

/// Exhaustive over all cuts; throws Error(kSizeCap) when n > cap.
CutApproximationReport cut_approximation_check(const WeightedGraph& base,
                                               const OverlayGraph& overlay, double alpha,
                                               std::size_t cap = kDefaultBruteForceCap);
CutApproximationReport cut_approximation_check(const WeightedGraph& base,
                                               const WeightedGraph& overlay, double alpha,
                                               std::size_t cap = kDefaultBruteForceCap);

// ---------------------------------------------------------------------------
// Negative correlation of tree edges

inline constexpr std::size_t kTreeEnumerationCap = 8;

/// Calls visit(edges, weight) for every spanning tree of g, where weight is
/// the product of the tree's edge weights. Throws Error(kSizeCap) for
/// n > kTreeEnumerationCap.
void enumerate_spanning_trees(
    const WeightedGraph& g,
    const std::function<void(std::span<const EdgeId>, double)>& visit);

struct EdgePairCorrelation {
  EdgeId first = 0;
  EdgeId second = 0;
  double exact_joint = 0.0;
  double exact_product = 0.0;
  double empirical_joint = 0.0;
  double empirical_product = 0.0;
};

struct NegativeCorrelationReport {
  std::size_t samples = 0;
  std::size_t trees_enumerated = 0;
  std::vector<double> exact_marginal;
  std::vector<double> empirical_marginal;
  std::vector<EdgePairCorrelation> pairs;
  /// max over pairs of joint − product (negative when every pair is strictly
  /// negatively correlated).
  double max_exact_excess = 0.0;
  double max_empirical_excess = 0.0;
  /// max(0, max_empirical_excess).
  double max_empirical_violation = 0.0;
  /// P[e,f ∈ T] <= P[e ∈ T]P[f ∈ T] for every pair, up to 1e-12.
  bool exact_holds = false;
};

/// Exact enumeration against `samples` Broder trees; requires
/// n <= kTreeEnumerationCap.
NegativeCorrelationReport negative_correlation_test(const WeightedGraph& g, std::size_t samples,
                                                    std::uint64_t seed);

}  // namespace monet
