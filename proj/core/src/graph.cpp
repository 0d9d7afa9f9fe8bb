#include "monet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <limits>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "monet/error.hpp"

namespace monet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kInvalidCut: return "invalid cut";
    case ErrorCode::kSizeCap: return "size cap exceeded";
    case ErrorCode::kNotConnected: return "graph not connected";
    case ErrorCode::kDegenerateGraph: return "degenerate graph";
    case ErrorCode::kInvalidParameter: return "invalid parameter";
    case ErrorCode::kNumericalFailure: return "numerical failure";
    case ErrorCode::kWalkLimit: return "walk limit exceeded";
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kInvalidKernel: return "invalid kernel";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown error";
}

namespace {

std::string edge_name(Vertex u, Vertex v) {
  return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ > std::numeric_limits<Vertex>::max()) {
    throw Error(ErrorCode::kInvalidParameter, "vertex count too large");
  }
  for (auto& e : edges_) {
    if (e.u == e.v) {
      throw Error(ErrorCode::kInvalidParameter, "self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u >= vertex_count_ || e.v >= vertex_count_) {
      throw Error(ErrorCode::kInvalidParameter,
                  "edge " + edge_name(e.u, e.v) + " references a vertex >= " +
                      std::to_string(vertex_count_));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::kInvalidParameter,
                  "non-positive weight on edge " + edge_name(e.u, e.v));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw Error(ErrorCode::kInvalidParameter,
                  "duplicate edge " + edge_name(edges_[i].u, edges_[i].v));
    }
  }

  std::vector<std::size_t> degree(vertex_count_, 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(vertex_count_ + 1, 0);
  for (std::size_t v = 0; v < vertex_count_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_.back());
  vertex_weights_.assign(vertex_count_, 0.0);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edge order is canonical, so each adjacency list comes out sorted by
  // neighbour for the lower endpoint; sort explicitly to cover both ends.
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    adjacency_[cursor[e.u]++] = {e.v, id};
    adjacency_[cursor[e.v]++] = {e.u, id};
    vertex_weights_[e.u] += e.weight;
    vertex_weights_[e.v] += e.weight;
    total_weight_ += e.weight;
  }
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1],
              [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
  }

  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  component_of_.assign(vertex_count_, kUnset);
  std::vector<Vertex> stack;
  for (Vertex root = 0; root < vertex_count_; ++root) {
    if (component_of_[root] != kUnset) continue;
    const auto label = static_cast<std::uint32_t>(component_count_++);
    component_of_[root] = label;
    stack.push_back(root);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (const auto& inc : neighbors(x)) {
        if (component_of_[inc.neighbor] == kUnset) {
          component_of_[inc.neighbor] = label;
          stack.push_back(inc.neighbor);
        }
      }
    }
  }
  connected_ = component_count_ == 1;
}

std::size_t WeightedGraph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v < vertex_count_; ++v) best = std::max(best, degree(static_cast<Vertex>(v)));
  return best;
}

double WeightedGraph::average_degree() const noexcept {
  if (vertex_count_ == 0) return 0.0;
  return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(vertex_count_);
}

std::optional<EdgeId> WeightedGraph::find_edge(Vertex a, Vertex b) const noexcept {
  if (a >= vertex_count_ || b >= vertex_count_) return std::nullopt;
  auto list = neighbors(a);
  auto it = std::lower_bound(list.begin(), list.end(), b,
                             [](const Incidence& inc, Vertex x) { return inc.neighbor < x; });
  if (it != list.end() && it->neighbor == b) return it->edge;
  return std::nullopt;
}

WeightedGraph WeightedGraph::without_edge(EdgeId id) const {
  if (id >= edges_.size()) throw Error(ErrorCode::kInvalidParameter, "edge id out of range");
  std::vector<Edge> kept;
  kept.reserve(edges_.size() - 1);
  for (EdgeId i = 0; i < edges_.size(); ++i) {
    if (i != id) kept.push_back(edges_[i]);
  }
  return WeightedGraph(vertex_count_, std::move(kept));
}

void WeightedGraph::require_connected(std::string_view what) const {
  if (!connected_) {
    throw Error(ErrorCode::kNotConnected,
                std::string(what) + ": graph not connected (" +
                    std::to_string(component_count_) + " components)");
  }
}

namespace {

bool parse_vertex(std::string_view token, Vertex& out) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return false;
  if (value >= std::numeric_limits<Vertex>::max()) return false;
  out = static_cast<Vertex>(value);
  return true;
}

bool parse_weight(std::string_view token, double& out) {
  // from_chars for double is available in libstdc++ 11.
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size() && std::isfinite(out);
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void parse_fail(const std::string& what, std::size_t line) {
  throw Error(ErrorCode::kParse, what + " at line " + std::to_string(line));
}

}  // namespace

WeightedGraph parse_graph(std::string_view text) {
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_line;
  std::size_t line_no = 0;
  std::size_t max_id = 0;
  bool any = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tokens.size() != 3) parse_fail("expected \"u v w\"", line_no);
    Edge e;
    if (!parse_vertex(tokens[0], e.u) || !parse_vertex(tokens[1], e.v)) {
      parse_fail("malformed vertex id", line_no);
    }
    if (!parse_weight(tokens[2], e.weight)) parse_fail("malformed weight", line_no);
    if (!(e.weight > 0.0)) parse_fail("non-positive weight", line_no);
    if (e.u == e.v) parse_fail("self-loop", line_no);
    if (e.u > e.v) std::swap(e.u, e.v);
    max_id = std::max<std::size_t>(max_id, e.v);
    any = true;
    edges.push_back(e);
    edge_line.push_back(line_no);
    if (end == text.size()) break;
  }
  if (!any) throw Error(ErrorCode::kParse, "no edges in input");

  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return edges[a].u != edges[b].u ? edges[a].u < edges[b].u : edges[a].v < edges[b].v;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& a = edges[order[i - 1]];
    const auto& b = edges[order[i]];
    if (a.u == b.u && a.v == b.v) {
      parse_fail("duplicate edge " + edge_name(b.u, b.v), std::max(edge_line[order[i]], edge_line[order[i - 1]]));
    }
  }
  return WeightedGraph(max_id + 1, std::move(edges));
}

WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open graph file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str());
}

std::string format_graph(const WeightedGraph& g) {
  std::string out;
  char buf[96];
  for (const auto& e : g.edges()) {
    std::snprintf(buf, sizeof buf, "%u %u %.17g\n", e.u, e.v, e.weight);
    out += buf;
  }
  return out;
}

std::string graph_digest(const WeightedGraph& g) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  auto feed = [&hash](std::string_view s) {
    for (unsigned char c : s) {
      hash ^= c;
      hash *= 0x100000001b3ull;
    }
  };
  feed("n=" + std::to_string(g.vertex_count()) + "\n");
  feed(format_graph(g));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

CutSet edge_boundary(const WeightedGraph& g, std::span<const Vertex> side) {
  const std::size_t n = g.vertex_count();
  std::vector<char> in_side(n, 0);
  CutSet cut;
  for (Vertex v : side) {
    if (v >= n) throw Error(ErrorCode::kInvalidParameter, "vertex " + std::to_string(v) + " out of range");
    if (!in_side[v]) {
      in_side[v] = 1;
      cut.side.push_back(v);
    }
  }
  if (cut.side.empty() || cut.side.size() == n) {
    throw Error(ErrorCode::kInvalidCut, "cut side must be a nonempty proper subset of V");
  }
  std::sort(cut.side.begin(), cut.side.end());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const auto& e = g.edge(id);
    if (in_side[e.u] != in_side[e.v]) {
      cut.boundary_edges.push_back(id);
      cut.boundary_weight += e.weight;
    }
  }
  cut.boundary_size = cut.boundary_edges.size();
  return cut;
}

}  // namespace monet
