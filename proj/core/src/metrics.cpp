#include "monet/metrics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "monet/error.hpp"

namespace monet {

namespace {

[[noreturn]] void domain(const std::string& what) { throw Error(ErrorCode::kDomain, what); }

double log_in_base(double x, double base) {
  if (base == 2.0) return std::log2(x);
  if (base == 10.0) return std::log10(x);
  return std::log(x) / std::log(base);
}

}  // namespace

double prob_route_monitored(std::size_t N, std::size_t C, std::size_t hops) {
  if (C > N) domain("prob_route_monitored: C exceeds N");
  if (hops >= N) domain("prob_route_monitored: r·l must be smaller than N");
  long double unmonitored = 1.0L;
  for (std::size_t i = 0; i <= hops; ++i) {
    if (C < i) return 1.0;
    unmonitored *= static_cast<long double>(C - i) / static_cast<long double>(N - i);
  }
  return static_cast<double>(1.0L - unmonitored);
}

double prob_route_monitored_independent(std::size_t N, std::size_t C, std::size_t visits) {
  if (N == 0 || C > N) domain("prob_route_monitored_independent: need 0 <= C <= N, N >= 1");
  return 1.0 - std::pow(static_cast<double>(C) / static_cast<double>(N), static_cast<double>(visits));
}

double confinement_bound(double beta, std::size_t t) {
  if (!(beta >= 0.0 && beta <= 1.0)) domain("confinement_bound: beta must lie in [0, 1]");
  if (t < 1) domain("confinement_bound: t must be >= 1");
  return std::pow(beta, static_cast<double>(t));
}

UnmonitoredBound max_unmonitored_bound(std::size_t N, std::size_t t, double target) {
  if (!(target > 0.0 && target < 1.0)) domain("max_unmonitored_bound: target must lie in (0, 1)");
  if (t < 1) domain("max_unmonitored_bound: t must be >= 1");
  UnmonitoredBound b;
  b.real = std::pow(target, 1.0 / static_cast<double>(t)) * static_cast<double>(N);
  b.rounded = static_cast<std::size_t>(std::llround(b.real));
  b.floor = static_cast<std::size_t>(std::floor(b.real));
  return b;
}

ChernoffBound chernoff_tail_bound(std::size_t N, std::size_t C, std::size_t t, double delta) {
  if (N == 0 || C > N) domain("chernoff_tail_bound: need 0 <= C <= N, N >= 1");
  if (t < 1) domain("chernoff_tail_bound: t must be >= 1");
  const double td = static_cast<double>(t);
  ChernoffBound out;
  out.mean = td * static_cast<double>(N - C) / static_cast<double>(N);
  if (!(delta > 0.0 && delta < td - out.mean)) {
    domain("chernoff_tail_bound: delta must satisfy 0 < delta < t - mu (mu = " + std::to_string(out.mean) + ")");
  }
  out.bound = std::exp(-2.0 * delta * delta / td);
  return out;
}

double path_probability(std::size_t N, std::size_t N_mix, std::size_t r_max, double log_base) {
  if (N < 2) domain("path_probability: N must be >= 2");
  if (r_max < 1) domain("path_probability: r_max must be >= 1");
  if (!(log_base > 1.0)) domain("path_probability: log base must be > 1");
  const double lg = log_in_base(static_cast<double>(N), log_base);
  if (static_cast<double>(N_mix) < lg) domain("path_probability: N_mix must be >= log N");
  // (1/r_max) · (r_max · log N / N_mix)
  return lg / static_cast<double>(N_mix);
}

HiddenStateReport hidden_state_probability(const SystemObservation& obs) {
  if (obs.message_count < 1) domain("hidden_state_probability: N_msg must be >= 1");
  HiddenStateReport out;
  out.message_count = obs.message_count;
  out.path_probability = path_probability(obs.node_count, obs.mix_count, obs.max_intermediates, obs.log_base);
  const double n_msg = static_cast<double>(obs.message_count);
  out.log_probability = n_msg * std::log(out.path_probability);
  if (out.log_probability > std::log(DBL_MIN)) out.probability = std::pow(out.path_probability, n_msg);
  if (obs.monitor_count > 0) out.monitor_probability_per_monitor = 1.0 / static_cast<double>(obs.monitor_count);
  out.monitor_probability_per_node = 1.0 / static_cast<double>(obs.node_count);
  return out;
}

std::vector<std::pair<Vertex, double>> UniformNeighborKernel::row(Vertex u) const {
  const auto nb = g_->neighbors(u);
  std::vector<std::pair<Vertex, double>> out;
  out.reserve(nb.size());
  for (const auto& inc : nb) out.emplace_back(inc.neighbor, 1.0 / static_cast<double>(nb.size()));
  return out;
}

std::vector<std::pair<Vertex, double>> WeightedNeighborKernel::row(Vertex u) const {
  std::vector<std::pair<Vertex, double>> out;
  const double w = g_->vertex_weight(u);
  for (const auto& inc : g_->neighbors(u)) out.emplace_back(inc.neighbor, g_->edge(inc.edge).weight / w);
  return out;
}

MatrixKernel::MatrixKernel(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n * n) throw Error(ErrorCode::kInvalidKernel, "kernel matrix must be n×n");
}

std::vector<std::pair<Vertex, double>> MatrixKernel::row(Vertex u) const {
  std::vector<std::pair<Vertex, double>> out;
  for (std::size_t v = 0; v < n_; ++v) {
    const double x = entries_[u * n_ + v];
    if (x != 0.0) out.emplace_back(static_cast<Vertex>(v), x);
  }
  return out;
}

RbcTable rbc_table(const RoutingKernel& kernel, Vertex s, Vertex t, std::size_t segment_hops,
                   std::size_t segments) {
  const std::size_t n = kernel.vertex_count();
  if (s >= n || t >= n) throw Error(ErrorCode::kInvalidParameter, "rbc_table: vertex out of range");
  if (segment_hops < 1 || segments < 1) {
    throw Error(ErrorCode::kInvalidParameter, "rbc_table: need l >= 1 and at least one segment");
  }
  std::vector<std::vector<std::pair<Vertex, double>>> rows(n);
  for (Vertex u = 0; u < n; ++u) {
    rows[u] = kernel.row(u);
    double sum = 0.0;
    for (const auto& [v, p] : rows[u]) {
      if (v >= n || !(p >= 0.0) || !std::isfinite(p)) {
        throw Error(ErrorCode::kInvalidKernel, "kernel row " + std::to_string(u) + " has an invalid entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw Error(ErrorCode::kInvalidKernel,
                  "kernel row " + std::to_string(u) + " sums to " + std::to_string(sum));
    }
  }

  RbcTable table;
  table.source = s;
  table.destination = t;
  table.segment_hops = segment_hops;
  table.segments = segments;
  table.kernel = kernel.name();
  const std::size_t hops = segment_hops * segments;

  table.occupancy.assign(hops + 1, std::vector<double>(n, 0.0));
  table.occupancy[0][s] = 1.0;
  for (std::size_t h = 1; h <= hops; ++h) {
    const auto& prev = table.occupancy[h - 1];
    auto& cur = table.occupancy[h];
    for (Vertex u = 0; u < n; ++u) {
      if (prev[u] == 0.0) continue;
      for (const auto& [v, p] : rows[u]) cur[v] += prev[u] * p;
    }
  }
  table.expected_visits.assign(n, 0.0);
  for (std::size_t h = 1; h <= hops; ++h) {
    for (Vertex v = 0; v < n; ++v) table.expected_visits[v] += table.occupancy[h][v];
  }

  // hit[x] = P[a walk from x reaches target within segment_hops steps].
  table.per_segment.assign(segments, std::vector<double>(n, 0.0));
  std::vector<double> hit(n), next(n);
  for (Vertex target = 0; target < n; ++target) {
    std::fill(hit.begin(), hit.end(), 0.0);
    for (std::size_t k = 0; k < segment_hops; ++k) {
      for (Vertex x = 0; x < n; ++x) {
        double acc = 0.0;
        for (const auto& [y, p] : rows[x]) acc += p * (y == target ? 1.0 : hit[y]);
        next[x] = acc;
      }
      hit.swap(next);
    }
    for (std::size_t j = 0; j < segments; ++j) {
      const auto& start = table.occupancy[j * segment_hops];
      double acc = 0.0;
      for (Vertex x = 0; x < n; ++x) acc += start[x] * hit[x];
      table.per_segment[j][target] = acc;
    }
  }
  table.delta.assign(n, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < segments; ++j) table.delta[v] += table.per_segment[j][v];
  }
  table.delta[s] = 1.0;

  std::vector<char> reached(n, 0);
  for (std::size_t h = 0; h < hops; ++h) {
    for (Vertex u = 0; u < n; ++u) {
      if (table.occupancy[h][u] > 0.0) reached[u] = 1;
    }
  }
  table.predecessors.assign(n, {});
  for (Vertex u = 0; u < n; ++u) {
    if (!reached[u]) continue;
    for (const auto& [v, p] : rows[u]) {
      if (p > 0.0) table.predecessors[v].push_back(u);
    }
  }
  return table;
}

AnonymityReport anonymity_degree(std::span<const double> p) {
  if (p.size() < 2) domain("anonymity_degree: need at least 2 subjects");
  AnonymityReport out;
  out.probabilities.assign(p.begin(), p.end());
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) domain("anonymity_degree: probabilities must be finite and >= 0");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) domain("anonymity_degree: probabilities sum to " + std::to_string(sum));

  std::vector<double> nonzero;
  for (double x : p) {
    if (x > 0.0) nonzero.push_back(x);
  }
  std::sort(nonzero.begin(), nonzero.end());
  if (nonzero.front() == nonzero.back()) {
    // Uniform over its support: exactly log₂ of the support size.
    out.entropy = std::log2(static_cast<double>(nonzero.size()));
  } else {
    for (double x : nonzero) out.entropy -= x * std::log2(x);
  }
  out.max_entropy = std::log2(static_cast<double>(p.size()));
  out.degree = std::clamp(out.entropy / out.max_entropy, 0.0, 1.0);
  return out;
}

double predecessor_attack_rounds(std::size_t n, std::size_t c) {
  if (c < 1 || c >= n) domain("predecessor_attack_rounds: need 1 <= c < n");
  const double ratio = static_cast<double>(n) / static_cast<double>(c);
  return ratio * ratio * std::log(static_cast<double>(n));
}

AttackCostReport attack_cost_report(const WeightedGraph& overlay, std::size_t attacker_count,
                                    std::size_t route_hops) {
  AttackCostReport out;
  out.node_count = overlay.vertex_count();
  out.attacker_count = attacker_count;
  out.predecessor_rounds = predecessor_attack_rounds(out.node_count, attacker_count);
  out.max_degree = overlay.max_degree();
  out.cover_traffic_messages = out.max_degree * out.node_count;
  out.route_hops = route_hops;
  out.rounds_per_route_hop = route_hops ? out.predecessor_rounds / static_cast<double>(route_hops) : 0.0;
  return out;
}

AttackCostReport attack_cost_report(const OverlayGraph& overlay, std::size_t attacker_count,
                                    std::size_t route_hops) {
  return attack_cost_report(overlay.graph(), attacker_count, route_hops);
}

std::size_t monitor_count_estimate(std::size_t N, std::size_t l) {
  if (l < 1) domain("monitor_count_estimate: l must be >= 1");
  return (N + l - 1) / l;
}

}  // namespace monet
