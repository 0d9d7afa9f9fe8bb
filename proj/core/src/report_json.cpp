#include "monet/report_json.hpp"

#include <cstdio>

namespace monet {

using nlohmann::json;

namespace {

std::string_view to_string(ExpansionMode m) { return m == ExpansionMode::kEdge ? "edge" : "vertex"; }

std::string_view to_string(InclusionMethod m) {
  switch (m) {
    case InclusionMethod::kAuto: return "auto";
    case InclusionMethod::kDeterminantRatio: return "determinant-ratio";
    case InclusionMethod::kRankOneUpdate: return "rank-one-update";
  }
  return "unknown";
}

}  // namespace

void to_json(json& j, const ExpansionResult& r) {
  j = {{"mode", to_string(r.mode)}, {"ratio", r.ratio}, {"witness", r.witness},
       {"witness_boundary", r.witness_boundary}};
}

void to_json(json& j, const EdgeStatistics& r) {
  j = {{"method", to_string(r.method)},
       {"average_probability", r.average_probability},
       {"reciprocal_condition", r.reciprocal_condition},
       {"inclusion_probability", r.inclusion_probability},
       {"effective_resistance", r.effective_resistance}};
}

void to_json(json& j, const CoverReport& r) {
  j = {{"test", r.parallel ? "parallel-cover" : "mixing-cover"},
       {"vertex_count", r.vertex_count},
       {"visited_count", r.visited_count},
       {"walk_length", r.walk_length},
       {"length_cap", r.length_cap},
       {"success", r.success},
       {"rule", to_string(r.rule)},
       {"weighted", r.weighted}};
  if (!r.parallel) {
    j["cap_factor"] = r.cap_factor;
    if (!r.walks.empty()) j["start"] = r.walks.front().start;
  } else {
    j["walk_count"] = r.walks.size();
  }
}

void to_json(json& j, const SpectralReport& r) {
  j = {{"epsilon", r.epsilon},
       {"probes_requested", r.probes_requested},
       {"probes_used", r.probes_used},
       {"probes_skipped", r.probes_skipped},
       {"ratio_min", r.ratio_min},
       {"ratio_max", r.ratio_max},
       {"resistance_scaled", r.resistance_scaled},
       {"pass", r.pass},
       {"notes", r.notes}};
  if (r.has_eigen_extremes) {
    j["eigen_min"] = r.eigen_min;
    j["eigen_max"] = r.eigen_max;
  }
}

void to_json(json& j, const CutApproximationReport& r) {
  j = {{"alpha", r.alpha},
       {"min_ratio", r.min_ratio},
       {"witness", r.witness},
       {"witness_overlay_boundary", r.witness_overlay_boundary},
       {"witness_base_boundary", r.witness_base_boundary},
       {"cuts_checked", r.cuts_checked},
       {"pass", r.pass}};
}

void to_json(json& j, const NegativeCorrelationReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"e", p.first},
                     {"f", p.second},
                     {"exact_joint", p.exact_joint},
                     {"exact_product", p.exact_product},
                     {"empirical_joint", p.empirical_joint},
                     {"empirical_product", p.empirical_product}});
  }
  j = {{"samples", r.samples},
       {"trees_enumerated", r.trees_enumerated},
       {"exact_marginal", r.exact_marginal},
       {"empirical_marginal", r.empirical_marginal},
       {"max_exact_excess", r.max_exact_excess},
       {"max_empirical_excess", r.max_empirical_excess},
       {"max_empirical_violation", r.max_empirical_violation},
       {"exact_holds", r.exact_holds},
       {"pairs", std::move(pairs)}};
}

void to_json(json& j, const BuildRound& r) {
  j = {{"round", r.round},
       {"k", r.requested},
       {"trees_returned", r.returned},
       {"total_trees", r.total_trees},
       {"distinct_edges", r.distinct_edges},
       {"per_worker", r.per_worker},
       {"passed", r.passed},
       {"verification", r.verification}};
}

json overlay_summary(const OverlayGraph& o) {
  return {{"vertices", o.vertex_count()},
          {"distinct_edges", o.distinct_edge_count()},
          {"base_edges", o.base().edge_count()},
          {"k", o.tree_count()},
          {"mode", to_string(o.mode())},
          {"seed", o.seed()},
          {"max_degree", o.graph().max_degree()},
          {"average_degree", o.graph().average_degree()},
          {"base_digest", graph_digest(o.base())}};
}

void to_json(json& j, const BuildOrchestration& r) {
  std::vector<std::size_t> ks;
  for (const auto& round : r.rounds) ks.push_back(round.requested);
  j = {{"worker_count", r.worker_count},
       {"seed", r.seed},
       {"round_cap", r.round_cap},
       {"k_sequence", ks},
       {"total_trees", r.total_trees},
       {"success", r.success},
       {"rounds", r.rounds},
       {"overlay", overlay_summary(r.overlay)}};
  if (!r.success) j["diagnostics"] = r.diagnostics;
}

void to_json(json& j, const RoutePlan& r) {
  json segments = json::array();
  for (const auto& s : r.segments) segments.push_back({{"vertices", s.vertices}, {"extension", s.extension}});
  j = {{"source", r.source},
       {"destination", r.destination},
       {"segment_hops", r.segment_hops},
       {"mode", to_string(r.mode)},
       {"revisit", to_string(r.revisit)},
       {"intermediates", r.intermediates},
       {"segments", std::move(segments)},
       {"splice", r.splice},
       {"walk_hops", r.walk_hops()},
       {"total_hops", r.total_hops()},
       {"digest", plan_digest(r)}};
}

void to_json(json& j, const TrialRecord& r) {
  j = {{"trial", r.trial},
       {"s", r.source},
       {"t", r.destination},
       {"digest", r.digest},
       {"walk_hops", r.walk_hops},
       {"splice_hops", r.splice_hops},
       {"monitored", r.monitored},
       {"first_monitor", r.first_monitor_hop ? json(*r.first_monitor_hop) : json(nullptr)}};
}

void to_json(json& j, const TrafficTrace& r) {
  j = {{"seed", r.seed},
       {"trials", r.trials},
       {"segment_hops", r.segment_hops},
       {"monitored", r.monitored},
       {"monitored_fraction", r.monitored_fraction},
       {"wilson95", {r.wilson_low, r.wilson_high}},
       {"monitored_with_splice", r.monitored_with_splice}};
}

void to_json(json& j, const UnmonitoredBound& r) {
  j = {{"real", r.real}, {"rounded", r.rounded}, {"floor", r.floor}};
}

void to_json(json& j, const ChernoffBound& r) { j = {{"mu", r.mean}, {"bound", r.bound}}; }

void to_json(json& j, const HiddenStateReport& r) {
  j = {{"message_count", r.message_count},
       {"path_probability", r.path_probability},
       {"log_probability", r.log_probability},
       {"probability", r.probability ? json(*r.probability) : json(nullptr)},
       {"monitor_probability_per_monitor",
        r.monitor_probability_per_monitor ? json(*r.monitor_probability_per_monitor) : json(nullptr)},
       {"monitor_probability_per_node", r.monitor_probability_per_node}};
}

void to_json(json& j, const RbcTable& r) {
  j = {{"source", r.source},
       {"destination", r.destination},
       {"segment_hops", r.segment_hops},
       {"segments", r.segments},
       {"kernel", r.kernel},
       {"delta", r.delta},
       {"per_segment", r.per_segment},
       {"expected_visits", r.expected_visits}};
}

void to_json(json& j, const AnonymityReport& r) {
  j = {{"entropy", r.entropy}, {"max_entropy", r.max_entropy}, {"degree", r.degree},
       {"subjects", r.probabilities.size()}};
}

void to_json(json& j, const AttackCostReport& r) {
  j = {{"node_count", r.node_count},
       {"attacker_count", r.attacker_count},
       {"max_degree", r.max_degree},
       {"cover_traffic_messages", r.cover_traffic_messages},
       {"predecessor_rounds", r.predecessor_rounds},
       {"route_hops", r.route_hops},
       {"rounds_per_route_hop", r.rounds_per_route_hop}};
}

std::string trace_jsonl(const TrafficTrace& trace) {
  std::string out;
  for (const auto& rec : trace.records) {
    out += json(rec).dump();
    out += '\n';
  }
  return out;
}

std::string rbc_csv(const RbcTable& table) {
  std::string out = "vertex,delta,expected_visits\n";
  char buf[96];
  for (std::size_t v = 0; v < table.delta.size(); ++v) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", v, table.delta[v], table.expected_visits[v]);
    out += buf;
  }
  return out;
}

}  // namespace monet
