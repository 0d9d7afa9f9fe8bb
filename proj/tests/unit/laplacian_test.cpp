#include <gtest/gtest.h>

#include <cmath>

#include "monet/error.hpp"
#include "monet/generators.hpp"
#include "monet/laplacian.hpp"
#include "oracle.hpp"

using namespace monet;

TEST(TreeWeight, SmallExamples) {
  EXPECT_NEAR(spanning_tree_weight(complete_graph(3)).value, 3.0, 1e-12);
  EXPECT_NEAR(spanning_tree_weight(parse_graph("0 1 1\n1 2 2\n2 0 3")).value, 11.0, 1e-12);
  EXPECT_NEAR(spanning_tree_weight(complete_graph(4)).value, 16.0, 1e-12);
}

TEST(TreeWeight, Cayley) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const double expected = (static_cast<double>(n) - 2) * std::log(static_cast<double>(n));
    EXPECT_NEAR(spanning_tree_weight(complete_graph(n)).log_value, expected, 1e-9) << n;
  }
}

TEST(TreeWeight, MatchesEnumerationOnCorpus) {
  for (const auto& name : oracle::corpus_names()) {
    const auto g = oracle::corpus_graph(name);
    long double total = 0;
    for (const auto& t : oracle::all_spanning_trees(g)) total += t.weight;
    const double kappa = spanning_tree_weight(g).value;
    EXPECT_NEAR(kappa / static_cast<double>(total), 1.0, 1e-9) << name;
    EXPECT_NEAR(kappa / static_cast<double>(oracle::reduced_laplacian_determinant(g)), 1.0, 1e-9) << name;
  }
}

TEST(TreeWeight, ExcludedEdge) {
  const auto g = parse_graph("0 1 1\n1 2 2\n2 0 3");
  EXPECT_NEAR(spanning_tree_weight(g, *g.find_edge(0, 2)).value, 2.0, 1e-12);
  const auto p = path_graph(4);
  const auto cut = spanning_tree_weight(p, 1);
  EXPECT_EQ(cut.value, 0.0);
  EXPECT_TRUE(std::isinf(cut.log_value));
}

TEST(TreeWeight, Errors) {
  EXPECT_THROW(spanning_tree_weight(WeightedGraph(1, {})), Error);
  EXPECT_THROW(spanning_tree_weight(parse_graph("0 1 1\n2 3 1")), Error);
}

TEST(EdgeStatistics, Examples) {
  const auto k3 = edge_statistics(complete_graph(3));
  for (double p : k3.inclusion_probability) EXPECT_NEAR(p, 2.0 / 3.0, 1e-12);
  const auto tri = parse_graph("0 1 1\n1 2 2\n2 0 3");
  const auto s = edge_statistics(tri);
  EXPECT_NEAR(s.inclusion_probability[*tri.find_edge(0, 2)], 9.0 / 11.0, 1e-12);
  const auto tree = oracle::corpus_graph("small_tree7.txt");
  for (double p : edge_statistics(tree).inclusion_probability) EXPECT_EQ(p, 1.0);
}

TEST(EdgeStatistics, MatchesEnumerationOnCorpus) {
  for (const auto& name : oracle::corpus_names()) {
    const auto g = oracle::corpus_graph(name);
    const auto exact = oracle::inclusion_probabilities(g);
    for (auto method : {InclusionMethod::kDeterminantRatio, InclusionMethod::kRankOneUpdate}) {
      const auto s = edge_statistics(g, method);
      double sum = 0.0;
      for (std::size_t e = 0; e < exact.size(); ++e) {
        EXPECT_NEAR(s.inclusion_probability[e], exact[e], 1e-9 * exact[e]) << name << " e=" << e;
        // p_e = w_e · R_e through the independent inverse.
        EXPECT_NEAR(s.conductance[e] * s.effective_resistance[e], exact[e], 1e-9) << name;
        sum += s.inclusion_probability[e];
      }
      EXPECT_NEAR(sum, static_cast<double>(g.vertex_count() - 1), 1e-6) << name;
      EXPECT_NEAR(s.average_probability, sum / static_cast<double>(g.edge_count()), 1e-12);
    }
  }
}

TEST(EdgeStatistics, LargerGraphMethodsAgree) {
  const auto g = random_connected_graph(90, 0.08, 0.5, 4.0, 17);
  const auto a = edge_statistics(g, InclusionMethod::kDeterminantRatio);
  const auto b = edge_statistics(g, InclusionMethod::kRankOneUpdate);
  const auto c = edge_statistics(g);
  EXPECT_EQ(c.method, InclusionMethod::kRankOneUpdate);
  double sum = 0.0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    EXPECT_NEAR(a.inclusion_probability[e], b.inclusion_probability[e], 1e-8);
    sum += b.inclusion_probability[e];
  }
  EXPECT_NEAR(sum, 89.0, 1e-6);
}

TEST(EdgeStatistics, NumericalFailureOnExtremeWeights) {
  // A 1e-300 edge makes the minor singular in double precision.
  const auto g = parse_graph("0 1 1\n1 2 1e-300\n");
  try {
    edge_statistics(g);
    ADD_FAILURE() << "expected a numerical failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNumericalFailure);
    EXPECT_NE(std::string(e.what()).find("condition"), std::string::npos);
  }
}

TEST(Bridges, TreeAndLollipop) {
  EXPECT_EQ(bridges(oracle::corpus_graph("small_tree7.txt")).size(), 6u);
  const auto lolly = oracle::corpus_graph("small_lollipop7.txt");
  const auto b = bridges(lolly);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(lolly.edge(b[0]).u, 3u);
  EXPECT_EQ(lolly.edge(b[0]).v, 4u);
  EXPECT_TRUE(bridges(complete_graph(5)).empty());
}
