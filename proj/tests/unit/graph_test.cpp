#include <gtest/gtest.h>

#include <random>

#include "monet/error.hpp"
#include "monet/generators.hpp"
#include "monet/graph.hpp"
#include "monet/laplacian.hpp"

using namespace monet;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseGraph, SingleEdge) {
  const auto g = parse_graph("0 1 1.0");
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(g.total_weight(), 1.0);
}

TEST(ParseGraph, Triangle) {
  const auto g = parse_graph("0 1 1\n1 2 2\n2 0 3");
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_DOUBLE_EQ(g.total_weight(), 6.0);
  EXPECT_DOUBLE_EQ(g.vertex_weight(0), 4.0);
  EXPECT_DOUBLE_EQ(g.vertex_weight(2), 5.0);
  EXPECT_TRUE(g.connected());
}

TEST(ParseGraph, CommentsAndBlankLines) {
  const auto g = parse_graph("# header\n\n0 1 2 # tail\n  1 2 1\n");
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_DOUBLE_EQ(g.total_weight(), 3.0);
}

TEST(ParseGraph, Errors) {
  EXPECT_EQ(message_of([] { parse_graph("0 1 -1"); }), "non-positive weight at line 1");
  EXPECT_EQ(code_of([] { parse_graph("0 1 0"); }), ErrorCode::kParse);
  EXPECT_NE(message_of([] { parse_graph("0 1 1\n1 0 2"); }).find("line 2"), std::string::npos);
  EXPECT_NE(message_of([] { parse_graph("0 0 1"); }).find("line 1"), std::string::npos);
  EXPECT_NE(message_of([] { parse_graph("0 1 1\n0 x 1"); }).find("line 2"), std::string::npos);
  EXPECT_NE(message_of([] { parse_graph("0 1"); }).find("line 1"), std::string::npos);
  EXPECT_NE(message_of([] { parse_graph("0 1 1 4"); }).find("line 1"), std::string::npos);
}

TEST(WeightedGraph, CanonicalOrderIndependentOfInput) {
  const auto a = parse_graph("2 0 3\n0 1 1\n1 2 2\n");
  const auto b = parse_graph("0 1 1\n1 2 2\n0 2 3\n");
  EXPECT_EQ(a, b);
  EXPECT_EQ(graph_digest(a), graph_digest(b));
  EXPECT_EQ(format_graph(a), format_graph(b));
  for (const auto& e : a.edges()) EXPECT_LT(e.u, e.v);
}

TEST(WeightedGraph, RoundTripThroughText) {
  const auto g = random_connected_graph(12, 0.3, 0.5, 2.5, 3);
  EXPECT_EQ(parse_graph(format_graph(g)), g);
}

TEST(WeightedGraph, TotalWeightIsEdgeSum) {
  const auto g = random_connected_graph(20, 0.2, 0.1, 5.0, 9);
  double sum = 0.0;
  for (const auto& e : g.edges()) sum += e.weight;
  EXPECT_NEAR(g.total_weight(), sum, 1e-12);
}

TEST(WeightedGraph, ConstructorValidation) {
  EXPECT_EQ(code_of([] { WeightedGraph(3, {{0, 0, 1.0}}); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of([] { WeightedGraph(3, {{0, 5, 1.0}}); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of([] { WeightedGraph(3, {{0, 1, 1.0}, {1, 0, 1.0}}); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(code_of([] { WeightedGraph(3, {{0, 1, -1.0}}); }), ErrorCode::kInvalidParameter);
}

TEST(WeightedGraph, Components) {
  const auto g = parse_graph("0 1 1\n1 2 1\n3 4 1\n");
  EXPECT_FALSE(g.connected());
  EXPECT_EQ(g.component_count(), 2u);
  EXPECT_EQ(code_of([&] { g.require_connected("test"); }), ErrorCode::kNotConnected);
  EXPECT_NE(message_of([&] { g.require_connected("test"); }).find("graph not connected"), std::string::npos);
}

TEST(WeightedGraph, FindEdgeAndWithout) {
  const auto g = complete_graph(5);
  ASSERT_TRUE(g.find_edge(3, 1).has_value());
  const auto h = g.without_edge(*g.find_edge(1, 3));
  EXPECT_EQ(h.edge_count(), 9u);
  EXPECT_FALSE(h.find_edge(1, 3).has_value());
  EXPECT_EQ(g.max_degree(), 4u);
  EXPECT_DOUBLE_EQ(g.average_degree(), 4.0);
}

TEST(EdgeBoundary, PathLeaf) {
  const auto g = path_graph(3);
  const std::vector<Vertex> s{0};
  const auto cut = edge_boundary(g, s);
  ASSERT_EQ(cut.boundary_size, 1u);
  EXPECT_EQ(g.edge(cut.boundary_edges[0]).u, 0u);
  EXPECT_EQ(g.edge(cut.boundary_edges[0]).v, 1u);
}

TEST(EdgeBoundary, K4AnyPair) {
  const auto g = complete_graph(4);
  for (Vertex a = 0; a < 4; ++a)
    for (Vertex b = a + 1; b < 4; ++b) {
      const std::vector<Vertex> s{a, b};
      EXPECT_EQ(edge_boundary(g, s).boundary_size, 4u);
    }
}

TEST(EdgeBoundary, CycleContiguousHalf) {
  const auto g = cycle_graph(8);
  const std::vector<Vertex> s{2, 3, 4, 5};
  const auto cut = edge_boundary(g, s);
  EXPECT_EQ(cut.boundary_size, 2u);
  EXPECT_DOUBLE_EQ(cut.boundary_weight, 2.0);
}

TEST(EdgeBoundary, ComplementSymmetric) {
  const auto g = random_connected_graph(10, 0.4, 0.5, 2.0, 4);
  std::mt19937 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vertex> s, t;
    for (Vertex v = 0; v < 10; ++v) (rng() & 1 ? s : t).push_back(v);
    if (s.empty() || t.empty()) continue;
    const auto a = edge_boundary(g, s);
    const auto b = edge_boundary(g, t);
    EXPECT_EQ(a.boundary_edges, b.boundary_edges);
    EXPECT_DOUBLE_EQ(a.boundary_weight, b.boundary_weight);
  }
}

TEST(EdgeBoundary, InvalidCuts) {
  const auto g = complete_graph(3);
  EXPECT_EQ(code_of([&] { edge_boundary(g, std::vector<Vertex>{}); }), ErrorCode::kInvalidCut);
  EXPECT_EQ(code_of([&] { edge_boundary(g, std::vector<Vertex>{0, 1, 2}); }), ErrorCode::kInvalidCut);
}

TEST(Laplacian, QuadraticFormMatchesEdgeSum) {
  const auto g = random_connected_graph(15, 0.3, 0.2, 3.0, 21);
  const auto L = LaplacianMatrix(g);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(15);
    for (auto& v : x) v = nd(rng);
    double direct = 0.0;
    for (const auto& e : g.edges()) direct += e.weight * (x[e.u] - x[e.v]) * (x[e.u] - x[e.v]);
    EXPECT_NEAR(laplacian_quadratic_form(g, x), direct, 1e-9);
    EXPECT_NEAR(L.quadratic_form(x), direct, 1e-9);
  }
}

TEST(Generators, Shapes) {
  EXPECT_EQ(complete_graph(6).edge_count(), 15u);
  EXPECT_EQ(path_graph(6).edge_count(), 5u);
  EXPECT_EQ(cycle_graph(6).edge_count(), 6u);
  EXPECT_EQ(star_graph(6).edge_count(), 5u);
  const auto r = random_regular_graph(100, 3, 7);
  EXPECT_TRUE(r.connected());
  for (Vertex v = 0; v < 100; ++v) EXPECT_EQ(r.degree(v), 3u);
  const auto odd = random_regular_graph(1021, 3, 7);
  EXPECT_TRUE(odd.connected());
  EXPECT_EQ(odd.degree(0), 4u);
  EXPECT_EQ(random_regular_graph(50, 4, 3), random_regular_graph(50, 4, 3));
}
