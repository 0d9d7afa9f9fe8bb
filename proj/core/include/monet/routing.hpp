#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monet/graph.hpp"
#include "monet/overlay.hpp"

namespace monet {

enum class RouteMode {
  kIncremental,  // sender fixes every segment up front
  kLoose,        // each intermediate may append one extra segment
};

enum class RevisitPolicy {
  kFree,           // walks may return to any vertex
  kNonRevisiting,  // no vertex appears twice in the walk part of a route
};

std::string_view to_string(RouteMode mode);
std::string_view to_string(RevisitPolicy policy);
RouteMode parse_route_mode(std::string_view text);
RevisitPolicy parse_revisit_policy(std::string_view text);

struct RouteOptions {
  std::size_t intermediates = 2;  // r
  RouteMode mode = RouteMode::kIncremental;
  RevisitPolicy revisit = RevisitPolicy::kFree;
  /// Base of the logarithm in l = ⌊log_b n⌋; defaults to the average degree.
  std::optional<double> log_base;
  /// Fixes l directly, bypassing the logarithm.
  std::optional<std::size_t> segment_length;
  /// Per-intermediate extension probability in loose mode.
  double extension_probability = 0.25;
  /// Step proportionally to overlay weights instead of uniformly.
  bool weighted = false;
  /// Non-revisiting mode: redraws of a stuck segment before the whole route
  /// is restarted, and restarts before giving up.
  std::size_t segment_attempts = 64;
  std::size_t route_attempts = 64;
};

/// l = max(1, ⌊ln n / ln b⌋) with b the average degree unless overridden.
std::size_t segment_length(const WeightedGraph& overlay, std::optional<double> log_base = std::nullopt);
std::size_t segment_length(const WeightedGraph& overlay, const RouteOptions& options);

struct RouteSegment {
  /// l + 1 vertices; front() is where the previous segment ended.
  std::vector<Vertex> vertices;
  /// Added by a relay in loose mode.
  bool extension = false;
};

struct RoutePlan {
  Vertex source = 0;
  Vertex destination = 0;
  std::size_t segment_hops = 0;  // l
  RouteMode mode = RouteMode::kIncremental;
  RevisitPolicy revisit = RevisitPolicy::kFree;
  /// v_1..v_r, the endpoints of the first r segments.
  std::vector<Vertex> intermediates;
  std::vector<RouteSegment> segments;
  /// Shortest overlay path from the last segment's endpoint to the
  /// destination, excluding that endpoint. Empty if the walk ended at t.
  std::vector<Vertex> splice;

  std::size_t walk_hops() const noexcept { return segments.size() * segment_hops; }
  std::size_t total_hops() const noexcept { return walk_hops() + splice.size(); }
  /// Vertex sequence of the walk part: source followed by every hop.
  std::vector<Vertex> walk_path() const;
  /// walk_path() followed by the splice.
  std::vector<Vertex> full_path() const;
};

/// 16 hex digits identifying a plan's full path and parameters.
std::string plan_digest(const RoutePlan& plan);

/// Plans a route of r + 1 random-walk segments of l hops each from s. The
/// last segment is followed by a shortest-path splice to t. Throws
/// Error(kInvalidParameter) for r == 0 or an unknown vertex, and
/// Error(kWalkLimit) if a non-revisiting route cannot be completed.
RoutePlan plan_route(const WeightedGraph& overlay, Vertex s, Vertex t, const RouteOptions& options,
                     std::uint64_t seed);
RoutePlan plan_route(const OverlayGraph& overlay, Vertex s, Vertex t, const RouteOptions& options,
                     std::uint64_t seed);

/// Breadth-first shortest path from `from` to `to`, both ends included.
std::vector<Vertex> shortest_path(const WeightedGraph& g, Vertex from, Vertex to);

class MonitorSet {
 public:
  MonitorSet() = default;
  /// Explicit members; duplicates are ignored.
  MonitorSet(std::size_t vertex_count, std::span<const Vertex> members);

  static MonitorSet all(std::size_t vertex_count);
  static MonitorSet none(std::size_t vertex_count);
  /// `monitor_count` members drawn uniformly without replacement.
  static MonitorSet random(std::size_t vertex_count, std::size_t monitor_count, std::uint64_t seed);

  std::size_t vertex_count() const noexcept { return is_member_.size(); }
  std::size_t monitor_count() const noexcept { return members_.size(); }
  /// C = |V ∖ M|, the non-monitoring vertices.
  std::size_t unmonitored_count() const noexcept { return vertex_count() - monitor_count(); }
  /// β = C / N.
  double beta() const noexcept;
  bool contains(Vertex v) const { return is_member_.at(v) != 0; }
  const std::vector<Vertex>& members() const noexcept { return members_; }

 private:
  std::vector<Vertex> members_;
  std::vector<char> is_member_;
};

/// Whitespace-separated vertex ids; '#' starts a comment.
MonitorSet parse_monitor_set(std::string_view text, std::size_t vertex_count);

using Flow = std::pair<Vertex, Vertex>;

/// "s t" per line; '#' starts a comment.
std::vector<Flow> parse_flows(std::string_view text, std::size_t vertex_count);

struct TrialRecord {
  std::size_t trial = 0;
  Vertex source = 0;
  Vertex destination = 0;
  std::string digest;
  std::size_t walk_hops = 0;
  std::size_t splice_hops = 0;
  /// Some walk vertex other than s and t is a monitor.
  bool monitored = false;
  /// Hop index (1-based along the walk path) of the first monitor.
  std::optional<std::size_t> first_monitor_hop;
  /// monitored, or a splice vertex other than t is a monitor.
  bool monitored_with_splice = false;
};

struct TrafficTrace {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t monitored = 0;
  std::size_t monitored_with_splice = 0;
  double monitored_fraction = 0.0;
  /// Wilson score interval at 95%.
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  std::size_t segment_hops = 0;
  std::vector<TrialRecord> records;
  /// Filled only when keep_plans is requested.
  std::vector<RoutePlan> plans;
};

struct TrafficOptions {
  RouteOptions route;
  bool keep_records = true;
  bool keep_plans = false;
};

/// Trial i routes flows[i mod |flows|] (or a fresh uniform pair s != t when
/// flows is empty) with seed derive_seed(seed, i, kRoute).
TrafficTrace simulate_traffic(const WeightedGraph& overlay, std::span<const Flow> flows,
                              const MonitorSet& monitors, std::size_t trials,
                              const TrafficOptions& options, std::uint64_t seed);
TrafficTrace simulate_traffic(const OverlayGraph& overlay, std::span<const Flow> flows,
                              const MonitorSet& monitors, std::size_t trials,
                              const TrafficOptions& options, std::uint64_t seed);

/// Wilson score interval for `successes` out of `trials` at normal quantile z.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

}  // namespace monet
