#include "monet/overlay.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "monet/error.hpp"
#include "monet/rng.hpp"

namespace monet {

std::string_view to_string(WeightMode mode) {
  return mode == WeightMode::kPlain ? "plain" : "resistance-scaled";
}

WeightMode parse_weight_mode(std::string_view text) {
  if (text == "plain") return WeightMode::kPlain;
  if (text == "resistance-scaled" || text == "scaled") return WeightMode::kResistanceScaled;
  throw Error(ErrorCode::kInvalidParameter, "unknown weight mode '" + std::string(text) + "'");
}

OverlayGraph::OverlayGraph(std::shared_ptr<const WeightedGraph> base,
                           std::vector<std::uint32_t> multiplicity, std::size_t tree_count,
                           WeightMode mode, std::uint64_t seed, const EdgeStatistics* stats)
    : base_(std::move(base)), tree_count_(tree_count), mode_(mode), seed_(seed) {
  if (!base_) throw Error(ErrorCode::kInvalidParameter, "overlay needs a base graph");
  if (multiplicity.size() != base_->edge_count()) {
    throw Error(ErrorCode::kInvalidParameter, "multiplicity vector does not match base edge count");
  }
  EdgeStatistics computed;
  if (mode_ == WeightMode::kResistanceScaled) {
    if (tree_count_ == 0) {
      throw Error(ErrorCode::kInvalidParameter, "resistance-scaled overlay needs k >= 1");
    }
    if (stats == nullptr) {
      computed = edge_statistics(*base_);
      stats = &computed;
    }
    if (stats->inclusion_probability.size() != base_->edge_count()) {
      throw Error(ErrorCode::kInvalidParameter, "edge statistics do not match the base graph");
    }
  }
  std::vector<double> weights(multiplicity.size(), 0.0);
  for (EdgeId id = 0; id < multiplicity.size(); ++id) {
    if (multiplicity[id] == 0) continue;
    const double w = base_->edge(id).weight;
    weights[id] = mode_ == WeightMode::kPlain
                      ? w
                      : static_cast<double>(multiplicity[id]) * w /
                            (static_cast<double>(tree_count_) * stats->inclusion_probability[id]);
  }
  assemble(multiplicity, weights);
}

OverlayGraph::OverlayGraph(std::shared_ptr<const WeightedGraph> base,
                           std::vector<std::uint32_t> multiplicity, std::vector<double> weights,
                           std::size_t tree_count, WeightMode mode, std::uint64_t seed)
    : base_(std::move(base)), tree_count_(tree_count), mode_(mode), seed_(seed) {
  if (!base_) throw Error(ErrorCode::kInvalidParameter, "overlay needs a base graph");
  if (multiplicity.size() != base_->edge_count() || weights.size() != base_->edge_count()) {
    throw Error(ErrorCode::kInvalidParameter, "overlay vectors do not match base edge count");
  }
  assemble(multiplicity, weights);
}

OverlayGraph OverlayGraph::from_base(std::shared_ptr<const WeightedGraph> base) {
  std::vector<std::uint32_t> ones(base->edge_count(), 1);
  return OverlayGraph(std::move(base), std::move(ones), 0, WeightMode::kPlain, 0);
}

void OverlayGraph::assemble(const std::vector<std::uint32_t>& by_base,
                            const std::vector<double>& weights) {
  std::vector<Edge> edges;
  for (EdgeId id = 0; id < by_base.size(); ++id) {
    if (by_base[id] == 0) continue;
    const auto& e = base_->edge(id);
    edges.push_back({e.u, e.v, weights[id]});
    multiplicity_.push_back(by_base[id]);
    base_edge_.push_back(id);
  }
  // Base edges are canonical, so the filtered list already is, and overlay
  // edge i lines up with multiplicity_[i].
  graph_ = WeightedGraph(base_->vertex_count(), std::move(edges));
}

OverlayAccumulator::OverlayAccumulator(std::shared_ptr<const WeightedGraph> base)
    : base_(std::move(base)), multiplicity_(base_->edge_count(), 0) {}

void OverlayAccumulator::add(const SpanningTree& tree) {
  for (EdgeId id : tree.edges) ++multiplicity_.at(id);
  ++trees_;
}

OverlayGraph OverlayAccumulator::finish(WeightMode mode, std::uint64_t seed,
                                        const EdgeStatistics* stats) const {
  return OverlayGraph(base_, multiplicity_, trees_, mode, seed, stats);
}

std::uint64_t tree_seed(std::uint64_t seed, std::uint64_t index) {
  return derive_seed(seed, index, seed_domain::kTree);
}

OverlayGraph build_overlay(std::shared_ptr<const WeightedGraph> g, std::size_t k,
                           std::uint64_t seed, WeightMode mode, const EdgeStatistics* stats) {
  if (k == 0) throw Error(ErrorCode::kInvalidParameter, "build_overlay: k must be >= 1");
  g->require_connected("build_overlay");
  OverlayAccumulator acc(g);
  for (std::size_t i = 0; i < k; ++i) acc.add(random_spanning_tree(*g, tree_seed(seed, i)));
  return acc.finish(mode, seed, stats);
}

OverlayGraph build_overlay(const WeightedGraph& g, std::size_t k, std::uint64_t seed,
                           WeightMode mode) {
  return build_overlay(std::make_shared<const WeightedGraph>(g), k, seed, mode);
}

std::string format_overlay(const OverlayGraph& o) {
  nlohmann::ordered_json header;
  header["format"] = "monet-overlay";
  header["version"] = 1;
  header["vertices"] = o.vertex_count();
  header["k"] = o.tree_count();
  header["seed"] = o.seed();
  header["mode"] = std::string(to_string(o.mode()));
  header["base_digest"] = graph_digest(o.base());
  std::string out = "# " + header.dump() + "\n";
  char buf[128];
  const auto edges = o.graph().edges();
  for (EdgeId i = 0; i < edges.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%u %u %.17g %u\n", edges[i].u, edges[i].v, edges[i].weight,
                  o.multiplicity(i));
    out += buf;
  }
  return out;
}

namespace {

[[noreturn]] void overlay_fail(const std::string& what, std::size_t line) {
  throw Error(ErrorCode::kParse, "overlay: " + what + " at line " + std::to_string(line));
}

}  // namespace

OverlayGraph parse_overlay(std::string_view text, std::shared_ptr<const WeightedGraph> base) {
  const std::size_t first_end = text.find('\n');
  std::string_view first = text.substr(0, first_end);
  if (first.rfind("# ", 0) != 0) overlay_fail("missing JSON header", 1);
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(first.substr(2));
  } catch (const nlohmann::json::exception& e) {
    overlay_fail(std::string("bad JSON header (") + e.what() + ")", 1);
  }
  if (header.value("format", "") != "monet-overlay") overlay_fail("not a monet overlay file", 1);
  const std::string digest = header.value("base_digest", "");
  if (digest != graph_digest(*base)) {
    throw Error(ErrorCode::kParse,
                "overlay was built over a different base graph (digest " + digest +
                    ", base has " + graph_digest(*base) + ")");
  }
  const auto k = header.at("k").get<std::size_t>();
  const auto seed = header.at("seed").get<std::uint64_t>();
  const WeightMode mode = parse_weight_mode(header.at("mode").get<std::string>());

  std::vector<std::uint32_t> multiplicity(base->edge_count(), 0);
  std::vector<double> weights(base->edge_count(), 0.0);
  std::istringstream lines{std::string(first_end == std::string_view::npos ? std::string_view{}
                                                                             : text.substr(first_end + 1))};
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(lines, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    long long u, v, m;
    double w;
    if (!(fields >> u)) continue;
    if (!(fields >> v >> w >> m)) overlay_fail("expected \"u v w m\"", line_no);
    std::string extra;
    if (fields >> extra) overlay_fail("trailing fields", line_no);
    if (u < 0 || v < 0 || m <= 0 || !(w > 0.0)) overlay_fail("invalid value", line_no);
    auto id = base->find_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (!id) overlay_fail("edge not present in the base graph", line_no);
    if (multiplicity[*id] != 0) overlay_fail("duplicate edge", line_no);
    multiplicity[*id] = static_cast<std::uint32_t>(m);
    weights[*id] = w;
  }
  return OverlayGraph(std::move(base), std::move(multiplicity), std::move(weights), k, mode, seed);
}

OverlayGraph read_overlay_file(const std::string& path, std::shared_ptr<const WeightedGraph> base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open overlay file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_overlay(buffer.str(), std::move(base));
}

}  // namespace monet
