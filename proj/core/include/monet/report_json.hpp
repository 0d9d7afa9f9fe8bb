#pragma once

#include <nlohmann/json.hpp>

#include "monet/distributed.hpp"
#include "monet/expansion.hpp"
#include "monet/laplacian.hpp"
#include "monet/metrics.hpp"
#include "monet/routing.hpp"
#include "monet/verifier.hpp"

// nlohmann::json conversions for every report type, found by ADL so that
// `nlohmann::json j = report;` works.
namespace monet {

void to_json(nlohmann::json& j, const ExpansionResult& r);
void to_json(nlohmann::json& j, const EdgeStatistics& r);
void to_json(nlohmann::json& j, const CoverReport& r);
void to_json(nlohmann::json& j, const SpectralReport& r);
void to_json(nlohmann::json& j, const CutApproximationReport& r);
void to_json(nlohmann::json& j, const NegativeCorrelationReport& r);
void to_json(nlohmann::json& j, const BuildRound& r);
void to_json(nlohmann::json& j, const BuildOrchestration& r);
void to_json(nlohmann::json& j, const RoutePlan& r);
void to_json(nlohmann::json& j, const TrialRecord& r);
/// Summary only; records are emitted separately as JSON lines.
void to_json(nlohmann::json& j, const TrafficTrace& r);
void to_json(nlohmann::json& j, const UnmonitoredBound& r);
void to_json(nlohmann::json& j, const ChernoffBound& r);
void to_json(nlohmann::json& j, const HiddenStateReport& r);
/// Per-vertex δ, per-segment δ and expected visits; occupancy is omitted.
void to_json(nlohmann::json& j, const RbcTable& r);
void to_json(nlohmann::json& j, const AnonymityReport& r);
void to_json(nlohmann::json& j, const AttackCostReport& r);

/// Summary of an overlay: sizes, mode, k, seed and base digest.
nlohmann::json overlay_summary(const OverlayGraph& o);

/// One compact JSON line per trial record.
std::string trace_jsonl(const TrafficTrace& trace);

/// CSV "vertex,delta,expected_visits" per vertex.
std::string rbc_csv(const RbcTable& table);

}  // namespace monet
