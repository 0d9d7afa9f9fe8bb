#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "monet/error.hpp"
#include "monet/generators.hpp"
#include "monet/metrics.hpp"

using namespace monet;

namespace {

// Straight evaluation of the product for comparison.
double product_oracle(long N, long C, long top) {
  long double q = 1;
  for (long i = 0; i <= top; ++i) q *= static_cast<long double>(std::max(C - i, 0L)) / (N - i);
  return static_cast<double>(1 - q);
}

bool domain_error(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == ErrorCode::kDomain;
  }
  return false;
}

}  // namespace

TEST(ProbRouteMonitored, N1021Example) {
  const double p = prob_route_monitored(1021, 700, 18);
  EXPECT_GE(p, 0.99);
  EXPECT_NEAR(p, product_oracle(1021, 700, 18), 1e-12);
  EXPECT_NEAR(p, 0.9993, 5e-5);
}

TEST(ProbRouteMonitored, Boundaries) {
  EXPECT_EQ(prob_route_monitored(100, 0, 5), 1.0);
  EXPECT_EQ(prob_route_monitored(100, 100, 5), 0.0);
  EXPECT_EQ(prob_route_monitored(100, 3, 10), 1.0);  // clamped factor
  EXPECT_TRUE(domain_error([] { prob_route_monitored(10, 11, 2); }));
  EXPECT_TRUE(domain_error([] { prob_route_monitored(10, 5, 10); }));
}

TEST(ProbRouteMonitored, Monotone) {
  double prev = 2.0;
  for (std::size_t C = 0; C <= 1021; C += 50) {
    const double p = prob_route_monitored(1021, C, 18);
    EXPECT_LE(p, prev);
    prev = p;
  }
  prev = -1.0;
  for (std::size_t h = 0; h < 60; ++h) {
    const double p = prob_route_monitored(1021, 700, h);
    EXPECT_GE(p, prev);
    prev = p;
  }
}

TEST(ProbRouteMonitored, IndependentModel) {
  EXPECT_NEAR(prob_route_monitored_independent(10, 5, 3), 1 - 0.125, 1e-15);
  EXPECT_EQ(prob_route_monitored_independent(10, 10, 3), 0.0);
}

TEST(ConfinementBound, Examples) {
  EXPECT_DOUBLE_EQ(confinement_bound(0.5, 6), 0.015625);
  for (std::size_t t = 1; t < 20; ++t) EXPECT_EQ(confinement_bound(1.0, t), 1.0);
  const double beta = 700.0 / 1021.0;
  EXPECT_NEAR(confinement_bound(beta, 6), beta * beta * beta * beta * beta * beta, 1e-15);
  EXPECT_NEAR(confinement_bound(beta, 6), 0.10385652509346845, 1e-12);
  EXPECT_TRUE(domain_error([] { confinement_bound(1.5, 2); }));
  EXPECT_TRUE(domain_error([] { confinement_bound(0.5, 0); }));
}

TEST(ConfinementBound, UpperBoundsEmpiricalConfinement) {
  // Walks v_1..v_t with v_1 uniform on the complete overlay; the fraction
  // confined to a random C-set stays below beta^t. Exact value is
  // beta * ((C-1)/(n-1))^(t-1).
  const std::size_t n = 64, C = 32, t = 6;
  const auto g = complete_graph(n);
  const double exact = 0.5 * std::pow(31.0 / 63.0, 5.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<char> in_c(n, 0);
    for (std::size_t i = 0; i < C; ++i) in_c[perm[i]] = 1;
    std::size_t confined = 0;
    const std::size_t walks = 200000;
    for (std::size_t w = 0; w < walks; ++w) {
      Vertex u = static_cast<Vertex>(rng() % n);
      bool inside = in_c[u];
      for (std::size_t h = 1; h < t && inside; ++h) {
        const auto nb = g.neighbors(u);
        u = nb[rng() % nb.size()].neighbor;
        inside = in_c[u];
      }
      confined += inside;
    }
    const double freq = static_cast<double>(confined) / walks;
    EXPECT_LE(freq, confinement_bound(0.5, t)) << seed;
    EXPECT_NEAR(freq, exact, 0.0015) << seed;
  }
}

TEST(MaxUnmonitoredBound, Examples) {
  const auto b = max_unmonitored_bound(1021, 6, 0.5);
  EXPECT_NEAR(b.real, std::pow(0.5, 1.0 / 6.0) * 1021, 1e-9);
  EXPECT_NEAR(b.real, 909.6, 0.05);
  EXPECT_EQ(b.rounded, 910u);
  EXPECT_EQ(b.floor, 909u);
  EXPECT_EQ(max_unmonitored_bound(1000, 1, 0.5).floor, 500u);
  EXPECT_EQ(max_unmonitored_bound(1000, 3, 0.999999).rounded, 1000u);
  EXPECT_TRUE(domain_error([] { max_unmonitored_bound(10, 2, 1.0); }));
}

TEST(ChernoffTailBound, Examples) {
  const double mu = 18.0 * 321.0 / 1021.0;
  const auto c = chernoff_tail_bound(1021, 700, 18, mu);
  EXPECT_NEAR(c.mean, mu, 1e-12);
  EXPECT_NEAR(c.bound, std::exp(-2 * mu * mu / 18), 1e-15);
  EXPECT_NEAR(c.bound, 0.0285, 5e-5);
  EXPECT_NEAR(chernoff_tail_bound(100, 50, 10, 1e-9).bound, 1.0, 1e-12);
  // C = 0 gives μ = t, so no δ satisfies 0 < δ < t − μ.
  EXPECT_TRUE(domain_error([] { chernoff_tail_bound(100, 0, 10, 1.0); }));
  EXPECT_TRUE(domain_error([] { chernoff_tail_bound(100, 50, 10, 6.0); }));
  EXPECT_TRUE(domain_error([] { chernoff_tail_bound(100, 50, 10, 0.0); }));
}

TEST(PathProbability, Examples) {
  EXPECT_DOUBLE_EQ(path_probability(1024, 1024), 10.0 / 1024.0);
  for (std::size_t r : {1u, 2u, 8u}) EXPECT_DOUBLE_EQ(path_probability(1024, 1024, r), 10.0 / 1024.0);
  EXPECT_DOUBLE_EQ(path_probability(1024, 10), 1.0);
  EXPECT_TRUE(domain_error([] { path_probability(1024, 9); }));
  EXPECT_NEAR(path_probability(1000, 500, 1, std::exp(1.0)), std::log(1000.0) / 500, 1e-15);
}

TEST(HiddenStateProbability, Examples) {
  SystemObservation obs{1024, 1024, 1, 50, 2, 2.0};
  auto h = hidden_state_probability(obs);
  EXPECT_DOUBLE_EQ(*h.probability, path_probability(1024, 1024));
  obs.message_count = 2;
  h = hidden_state_probability(obs);
  EXPECT_NEAR(*h.probability, (10.0 / 1024) * (10.0 / 1024), 1e-18);
  EXPECT_NEAR(h.log_probability, 2 * std::log(10.0 / 1024), 1e-12);
  EXPECT_DOUBLE_EQ(*h.monitor_probability_per_monitor, 1.0 / 50);
  EXPECT_DOUBLE_EQ(h.monitor_probability_per_node, 1.0 / 1024);
  // Any two hidden states share the same product.
  EXPECT_EQ(hidden_state_probability(obs).log_probability, h.log_probability);
  obs.message_count = 1000;
  h = hidden_state_probability(obs);
  EXPECT_FALSE(h.probability.has_value());
  EXPECT_NEAR(h.log_probability, 1000 * std::log(10.0 / 1024), 1e-9);
  obs.message_count = 0;
  EXPECT_TRUE(domain_error([&] { hidden_state_probability(obs); }));
}

TEST(RbcTable, CompleteGraphUniform) {
  const auto g = complete_graph(12);
  const auto t = rbc_table(UniformNeighborKernel(g), 0, 11, 3, 3);
  EXPECT_EQ(t.delta[0], 1.0);
  for (Vertex v = 2; v < 12; ++v) EXPECT_NEAR(t.delta[v], t.delta[1], 1e-12);
  for (const auto& row : t.occupancy) {
    double s = 0.0;
    for (double x : row) s += x;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
  for (const auto& seg : t.per_segment)
    for (double x : seg) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0 + 1e-12);
    }
  for (double d : t.delta) EXPECT_LE(d, 3.0 + 1e-12);
}

TEST(RbcTable, RingTwoHops) {
  const auto g = cycle_graph(8);
  const auto t = rbc_table(UniformNeighborKernel(g), 0, 4, 2, 1);
  EXPECT_DOUBLE_EQ(t.occupancy[1][1], 0.5);
  EXPECT_DOUBLE_EQ(t.occupancy[1][7], 0.5);
  EXPECT_DOUBLE_EQ(t.occupancy[2][0], 0.5);
  EXPECT_DOUBLE_EQ(t.occupancy[2][2], 0.25);
  // Hit within two hops: 1/2 at hop 1, never again at hop 2.
  EXPECT_DOUBLE_EQ(t.delta[1], 0.5);
  EXPECT_DOUBLE_EQ(t.delta[2], 0.25);
  EXPECT_DOUBLE_EQ(t.delta[4], 0.0);
  EXPECT_DOUBLE_EQ(t.expected_visits[1], 0.5);
  EXPECT_EQ(t.predecessors[1], (std::vector<Vertex>{0}));  // 2 is never reached before the last hop
}

TEST(RbcTable, MonteCarloAgreement) {
  const auto g = random_regular_graph(30, 3, 1);
  const auto t = rbc_table(UniformNeighborKernel(g), 0, 29, 2, 3);
  std::mt19937_64 rng(3);
  std::vector<double> hits(30, 0.0);
  const std::size_t walks = 200000;
  for (std::size_t w = 0; w < walks; ++w) {
    Vertex u = 0;
    for (std::size_t seg = 0; seg < 3; ++seg) {
      std::vector<char> seen(30, 0);
      for (std::size_t h = 0; h < 2; ++h) {
        const auto nb = g.neighbors(u);
        u = nb[rng() % nb.size()].neighbor;
        seen[u] = 1;
      }
      for (Vertex v = 0; v < 30; ++v) hits[v] += seen[v];
    }
  }
  for (Vertex v = 1; v < 30; ++v) EXPECT_NEAR(hits[v] / walks, t.delta[v], 0.01) << v;
}

TEST(RbcTable, InvalidKernels) {
  EXPECT_THROW(MatrixKernel(2, {1.0, 0.0, 0.0}), Error);
  const MatrixKernel bad(2, {0.5, 0.4, 0.0, 1.0});
  try {
    rbc_table(bad, 0, 1, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidKernel);
  }
  const MatrixKernel negative(2, {1.5, -0.5, 0.0, 1.0});
  EXPECT_THROW(rbc_table(negative, 0, 1, 1, 1), Error);
  const MatrixKernel good(2, {0.0, 1.0, 1.0, 0.0});
  EXPECT_DOUBLE_EQ(rbc_table(good, 0, 1, 1, 2).delta[1], 1.0);
  // Weighted kernel rows are stochastic too.
  const auto w = random_connected_graph(10, 0.4, 0.5, 3.0, 2);
  EXPECT_NO_THROW(rbc_table(WeightedNeighborKernel(w), 0, 9, 2, 2));
}

TEST(AnonymityDegree, Examples) {
  for (std::size_t n : {2u, 3u, 7u, 10u, 1021u}) {
    const std::vector<double> p(n, 1.0 / static_cast<double>(n));
    EXPECT_EQ(anonymity_degree(p).degree, 1.0) << n;
  }
  const std::vector<double> point{0.0, 1.0, 0.0};
  EXPECT_EQ(anonymity_degree(point).degree, 0.0);
  const std::vector<double> half{0.5, 0.5, 0.0, 0.0};
  const auto r = anonymity_degree(half);
  EXPECT_NEAR(r.entropy, 1.0, 1e-12);
  EXPECT_NEAR(r.max_entropy, 2.0, 1e-12);
  EXPECT_NEAR(r.degree, 0.5, 1e-12);
}

TEST(AnonymityDegree, PermutationInvariantAndValidated) {
  std::vector<double> p{0.1, 0.2, 0.3, 0.15, 0.25};
  const double d = anonymity_degree(p).degree;
  std::sort(p.begin(), p.end());
  do {
    EXPECT_EQ(anonymity_degree(p).degree, d);
  } while (std::next_permutation(p.begin(), p.end()));
  EXPECT_GT(d, 0.0);
  EXPECT_LT(d, 1.0);
  EXPECT_TRUE(domain_error([] { anonymity_degree(std::vector<double>{1.0}); }));
  EXPECT_TRUE(domain_error([] { anonymity_degree(std::vector<double>{0.5, 0.6}); }));
  EXPECT_TRUE(domain_error([] { anonymity_degree(std::vector<double>{1.5, -0.5}); }));
}

TEST(AttackCost, Examples) {
  // A graph with maximum degree 6 on 100 vertices.
  std::vector<Edge> edges;
  for (Vertex v = 1; v < 100; ++v) edges.push_back({v - 1, v, 1.0});
  for (Vertex v = 1; v <= 4; ++v) edges.push_back({0, static_cast<Vertex>(10 * v), 1.0});
  const WeightedGraph g(100, edges);
  ASSERT_EQ(g.max_degree(), 5u);
  edges.push_back({0, 50, 1.0});
  const WeightedGraph g6(100, edges);
  ASSERT_EQ(g6.max_degree(), 6u);
  const auto r = attack_cost_report(g6, 10, 18);
  EXPECT_EQ(r.cover_traffic_messages, 600u);
  EXPECT_NEAR(r.predecessor_rounds, 100 * std::log(100.0), 1e-9);
  EXPECT_NEAR(r.rounds_per_route_hop, r.predecessor_rounds / 18, 1e-12);
  EXPECT_NEAR(predecessor_attack_rounds(1000, 100), 690.7755, 1e-3);
  EXPECT_NEAR(predecessor_attack_rounds(1000, 999), std::log(1000.0) * std::pow(1000.0 / 999, 2), 1e-12);
  EXPECT_TRUE(domain_error([] { predecessor_attack_rounds(10, 10); }));
  EXPECT_TRUE(domain_error([] { predecessor_attack_rounds(10, 0); }));
}

TEST(MonitorCountEstimate, Examples) {
  EXPECT_EQ(monitor_count_estimate(1024, 10), 103u);
  EXPECT_EQ(monitor_count_estimate(1024, 1), 1024u);
  EXPECT_EQ(monitor_count_estimate(1024, 1024), 1u);
  EXPECT_TRUE(domain_error([] { monitor_count_estimate(10, 0); }));
}
