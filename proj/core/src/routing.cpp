#include "monet/routing.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <tuple>

#include "monet/error.hpp"
#include "monet/rng.hpp"
#include "monet/walk.hpp"

namespace monet {

std::string_view to_string(RouteMode mode) {
  return mode == RouteMode::kIncremental ? "incremental" : "loose";
}

std::string_view to_string(RevisitPolicy policy) {
  return policy == RevisitPolicy::kFree ? "free" : "non-revisiting";
}

RouteMode parse_route_mode(std::string_view text) {
  if (text == "incremental") return RouteMode::kIncremental;
  if (text == "loose") return RouteMode::kLoose;
  throw Error(ErrorCode::kInvalidParameter, "unknown route mode '" + std::string(text) + "'");
}

RevisitPolicy parse_revisit_policy(std::string_view text) {
  if (text == "free") return RevisitPolicy::kFree;
  if (text == "non-revisiting" || text == "nonrevisiting") return RevisitPolicy::kNonRevisiting;
  throw Error(ErrorCode::kInvalidParameter, "unknown revisit policy '" + std::string(text) + "'");
}

std::size_t segment_length(const WeightedGraph& overlay, std::optional<double> log_base) {
  const double n = static_cast<double>(overlay.vertex_count());
  const double b = log_base.value_or(overlay.average_degree());
  if (log_base && !(*log_base > 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "log base must be > 1");
  }
  if (!(b > 1.0) || n < 2.0) return 1;
  // The epsilon keeps exact powers (n = b^k) from flooring to k - 1.
  const double l = std::floor(std::log(n) / std::log(b) + 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(l));
}

std::size_t segment_length(const WeightedGraph& overlay, const RouteOptions& options) {
  if (options.segment_length) {
    if (*options.segment_length < 1) throw Error(ErrorCode::kInvalidParameter, "segment length must be >= 1");
    return *options.segment_length;
  }
  return segment_length(overlay, options.log_base);
}

std::vector<Vertex> RoutePlan::walk_path() const {
  std::vector<Vertex> path{source};
  path.reserve(walk_hops() + 1);
  for (const auto& seg : segments) path.insert(path.end(), seg.vertices.begin() + 1, seg.vertices.end());
  return path;
}

std::vector<Vertex> RoutePlan::full_path() const {
  auto path = walk_path();
  path.insert(path.end(), splice.begin(), splice.end());
  return path;
}

std::string plan_digest(const RoutePlan& plan) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 0x100000001b3ull;
    }
  };
  mix(plan.segment_hops);
  mix(static_cast<std::uint64_t>(plan.mode));
  mix(static_cast<std::uint64_t>(plan.revisit));
  mix(plan.destination);
  for (Vertex v : plan.full_path()) mix(v);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Vertex> shortest_path(const WeightedGraph& g, Vertex from, Vertex to) {
  const std::size_t n = g.vertex_count();
  if (from >= n || to >= n) throw Error(ErrorCode::kInvalidParameter, "shortest_path: vertex out of range");
  constexpr Vertex kNone = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> parent(n, kNone);
  parent[from] = from;
  std::queue<Vertex> frontier;
  frontier.push(from);
  while (!frontier.empty() && parent[to] == kNone) {
    const Vertex u = frontier.front();
    frontier.pop();
    for (const auto& inc : g.neighbors(u)) {
      if (parent[inc.neighbor] != kNone) continue;
      parent[inc.neighbor] = u;
      frontier.push(inc.neighbor);
    }
  }
  if (parent[to] == kNone) throw Error(ErrorCode::kNotConnected, "shortest_path: graph not connected");
  std::vector<Vertex> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

class SegmentWalker {
 public:
  SegmentWalker(const WeightedGraph& g, const RouteOptions& options, std::size_t l)
      : g_(g), stepper_(g, options.weighted), options_(options), l_(l), visited_(g.vertex_count(), 0) {}

  void reset(Vertex s) {
    std::fill(visited_.begin(), visited_.end(), 0);
    visited_[s] = 1;
  }

  // Returns false when a non-revisiting segment could not be completed.
  bool walk(Vertex from, Rng& rng, std::vector<Vertex>& out) {
    out.assign(1, from);
    if (options_.revisit == RevisitPolicy::kFree) {
      Vertex u = from;
      for (std::size_t h = 0; h < l_; ++h) {
        u = stepper_.step(u, rng).neighbor;
        out.push_back(u);
      }
      return true;
    }
    for (std::size_t attempt = 0; attempt < options_.segment_attempts; ++attempt) {
      out.assign(1, from);
      if (extend_fresh(rng, out)) return true;
      for (std::size_t i = 1; i < out.size(); ++i) visited_[out[i]] = 0;
    }
    return false;
  }

 private:
  bool extend_fresh(Rng& rng, std::vector<Vertex>& out) {
    for (std::size_t h = 0; h < l_; ++h) {
      const Vertex u = out.back();
      candidates_.clear();
      double total = 0.0;
      for (const auto& inc : g_.neighbors(u)) {
        if (visited_[inc.neighbor]) continue;
        candidates_.push_back(inc);
        total += options_.weighted ? g_.edge(inc.edge).weight : 1.0;
      }
      if (candidates_.empty()) return false;
      std::size_t pick = 0;
      if (options_.weighted) {
        double x = rng.uniform() * total;
        pick = candidates_.size() - 1;
        for (std::size_t i = 0; i < candidates_.size(); ++i) {
          x -= g_.edge(candidates_[i].edge).weight;
          if (x < 0.0) {
            pick = i;
            break;
          }
        }
      } else {
        pick = rng.below(candidates_.size());
      }
      const Vertex next = candidates_[pick].neighbor;
      visited_[next] = 1;
      out.push_back(next);
    }
    return true;
  }

  const WeightedGraph& g_;
  WalkStepper stepper_;
  const RouteOptions& options_;
  std::size_t l_;
  std::vector<char> visited_;
  std::vector<Incidence> candidates_;
};

void validate_route(const WeightedGraph& g, Vertex s, Vertex t, const RouteOptions& options) {
  if (g.vertex_count() < 2) throw Error(ErrorCode::kDegenerateGraph, "route needs at least 2 vertices");
  if (options.intermediates < 1) throw Error(ErrorCode::kInvalidParameter, "route needs r >= 1 intermediates");
  if (s >= g.vertex_count() || t >= g.vertex_count()) {
    throw Error(ErrorCode::kInvalidParameter, "route endpoint out of range");
  }
  if (!(options.extension_probability >= 0.0 && options.extension_probability <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "extension probability must lie in [0, 1]");
  }
  g.require_connected("plan_route");
}

RoutePlan plan_validated(const WeightedGraph& g, Vertex s, Vertex t, const RouteOptions& options,
                         std::size_t l, std::uint64_t seed, SegmentWalker& walker) {
  Rng rng(seed);
  const std::size_t r = options.intermediates;
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(options.route_attempts, 1); ++attempt) {
    RoutePlan plan;
    plan.source = s;
    plan.destination = t;
    plan.segment_hops = l;
    plan.mode = options.mode;
    plan.revisit = options.revisit;
    walker.reset(s);

    bool complete = true;
    Vertex at = s;
    auto append = [&](bool extension) {
      RouteSegment seg;
      seg.extension = extension;
      if (!walker.walk(at, rng, seg.vertices)) return false;
      at = seg.vertices.back();
      plan.segments.push_back(std::move(seg));
      return true;
    };
    for (std::size_t i = 0; i < r && complete; ++i) {
      complete = append(false);
      if (!complete) break;
      plan.intermediates.push_back(at);
      if (options.mode == RouteMode::kLoose && rng.bernoulli(options.extension_probability)) {
        complete = append(true);
      }
    }
    if (complete) complete = append(false);  // delivery segment
    if (!complete) continue;

    if (at != t) {
      auto path = shortest_path(g, at, t);
      plan.splice.assign(path.begin() + 1, path.end());
    }
    return plan;
  }
  throw Error(ErrorCode::kWalkLimit, "non-revisiting route could not be completed after " +
                                         std::to_string(options.route_attempts) + " attempts");
}

}  // namespace

RoutePlan plan_route(const WeightedGraph& overlay, Vertex s, Vertex t, const RouteOptions& options,
                     std::uint64_t seed) {
  validate_route(overlay, s, t, options);
  const std::size_t l = segment_length(overlay, options);
  SegmentWalker walker(overlay, options, l);
  return plan_validated(overlay, s, t, options, l, seed, walker);
}

RoutePlan plan_route(const OverlayGraph& overlay, Vertex s, Vertex t, const RouteOptions& options,
                     std::uint64_t seed) {
  return plan_route(overlay.graph(), s, t, options, seed);
}

MonitorSet::MonitorSet(std::size_t vertex_count, std::span<const Vertex> members)
    : is_member_(vertex_count, 0) {
  for (Vertex v : members) {
    if (v >= vertex_count) throw Error(ErrorCode::kInvalidParameter, "monitor vertex out of range");
    is_member_[v] = 1;
  }
  for (Vertex v = 0; v < vertex_count; ++v) {
    if (is_member_[v]) members_.push_back(v);
  }
}

MonitorSet MonitorSet::all(std::size_t vertex_count) {
  std::vector<Vertex> members(vertex_count);
  for (Vertex v = 0; v < vertex_count; ++v) members[v] = v;
  return MonitorSet(vertex_count, members);
}

MonitorSet MonitorSet::none(std::size_t vertex_count) { return MonitorSet(vertex_count, {}); }

MonitorSet MonitorSet::random(std::size_t vertex_count, std::size_t monitor_count, std::uint64_t seed) {
  if (monitor_count > vertex_count) {
    throw Error(ErrorCode::kInvalidParameter, "more monitors requested than vertices");
  }
  std::vector<Vertex> pool(vertex_count);
  for (Vertex v = 0; v < vertex_count; ++v) pool[v] = v;
  Rng rng(derive_seed(seed, 0, seed_domain::kMonitor));
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < monitor_count; ++i) {
    const std::size_t j = i + rng.below(vertex_count - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(monitor_count);
  return MonitorSet(vertex_count, pool);
}

double MonitorSet::beta() const noexcept {
  return vertex_count() ? static_cast<double>(unmonitored_count()) / static_cast<double>(vertex_count()) : 0.0;
}

namespace {

// Integer tokens per line with '#' comments; calls fn(tokens, line_number).
template <typename Fn>
void for_each_line_tokens(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::uint64_t> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ',')) ++i;
      if (i == line.size()) break;
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
      const std::size_t used = static_cast<std::size_t>(ptr - (line.data() + i));
      if (ec != std::errc{} || used == 0) {
        throw Error(ErrorCode::kParse, "malformed vertex id at line " + std::to_string(line_no));
      }
      i += used;
      if (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != ',') {
        throw Error(ErrorCode::kParse, "malformed vertex id at line " + std::to_string(line_no));
      }
      tokens.push_back(value);
    }
    fn(tokens, line_no);
  }
}

}  // namespace

MonitorSet parse_monitor_set(std::string_view text, std::size_t vertex_count) {
  std::vector<Vertex> members;
  for_each_line_tokens(text, [&](const std::vector<std::uint64_t>& tokens, std::size_t line_no) {
    for (auto v : tokens) {
      if (v >= vertex_count) {
        throw Error(ErrorCode::kParse, "monitor vertex out of range at line " + std::to_string(line_no));
      }
      members.push_back(static_cast<Vertex>(v));
    }
  });
  return MonitorSet(vertex_count, members);
}

std::vector<Flow> parse_flows(std::string_view text, std::size_t vertex_count) {
  std::vector<Flow> flows;
  for_each_line_tokens(text, [&](const std::vector<std::uint64_t>& tokens, std::size_t line_no) {
    if (tokens.empty()) return;
    if (tokens.size() != 2) throw Error(ErrorCode::kParse, "expected \"s t\" at line " + std::to_string(line_no));
    if (tokens[0] >= vertex_count || tokens[1] >= vertex_count) {
      throw Error(ErrorCode::kParse, "flow vertex out of range at line " + std::to_string(line_no));
    }
    flows.emplace_back(static_cast<Vertex>(tokens[0]), static_cast<Vertex>(tokens[1]));
  });
  return flows;
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  const double low = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {low, high};
}

TrafficTrace simulate_traffic(const WeightedGraph& overlay, std::span<const Flow> flows,
                              const MonitorSet& monitors, std::size_t trials,
                              const TrafficOptions& options, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::kInvalidParameter, "simulate_traffic: trials must be >= 1");
  if (monitors.vertex_count() != overlay.vertex_count()) {
    throw Error(ErrorCode::kInvalidParameter, "monitor set does not match the overlay's vertex count");
  }
  const std::size_t n = overlay.vertex_count();
  for (const auto& [s, t] : flows) validate_route(overlay, s, t, options.route);
  if (flows.empty()) validate_route(overlay, 0, 1, options.route);

  const std::size_t l = segment_length(overlay, options.route);
  SegmentWalker walker(overlay, options.route, l);

  TrafficTrace trace;
  trace.seed = seed;
  trace.trials = trials;
  trace.segment_hops = l;
  if (options.keep_records) trace.records.reserve(trials);

  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t trial_seed = derive_seed(seed, i, seed_domain::kRoute);
    Vertex s = 0;
    Vertex t = 0;
    if (flows.empty()) {
      Rng pick(derive_seed(trial_seed, 1, seed_domain::kRoute));
      s = static_cast<Vertex>(pick.below(n));
      t = static_cast<Vertex>(pick.below(n - 1));
      if (t >= s) ++t;
    } else {
      std::tie(s, t) = flows[i % flows.size()];
    }
    RoutePlan plan = plan_validated(overlay, s, t, options.route, l, trial_seed, walker);

    TrialRecord rec;
    rec.trial = i;
    rec.source = s;
    rec.destination = t;
    rec.walk_hops = plan.walk_hops();
    rec.splice_hops = plan.splice.size();
    const auto path = plan.walk_path();
    for (std::size_t h = 1; h < path.size(); ++h) {
      const Vertex v = path[h];
      if (v != s && v != t && monitors.contains(v)) {
        rec.monitored = true;
        rec.first_monitor_hop = h;
        break;
      }
    }
    rec.monitored_with_splice = rec.monitored;
    for (Vertex v : plan.splice) {
      if (v != t && monitors.contains(v)) rec.monitored_with_splice = true;
    }
    trace.monitored += rec.monitored ? 1 : 0;
    trace.monitored_with_splice += rec.monitored_with_splice ? 1 : 0;
    if (options.keep_records) {
      rec.digest = plan_digest(plan);
      trace.records.push_back(std::move(rec));
    }
    if (options.keep_plans) trace.plans.push_back(std::move(plan));
  }
  trace.monitored_fraction = static_cast<double>(trace.monitored) / static_cast<double>(trials);
  std::tie(trace.wilson_low, trace.wilson_high) = wilson_interval(trace.monitored, trials);
  return trace;
}

TrafficTrace simulate_traffic(const OverlayGraph& overlay, std::span<const Flow> flows,
                              const MonitorSet& monitors, std::size_t trials,
                              const TrafficOptions& options, std::uint64_t seed) {
  return simulate_traffic(overlay.graph(), flows, monitors, trials, options, seed);
}

}  // namespace monet
