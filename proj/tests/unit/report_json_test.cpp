#include <gtest/gtest.h>

#include <memory>

#include "monet/generators.hpp"
#include "monet/report_json.hpp"

using namespace monet;
using nlohmann::json;

TEST(ReportJson, OrchestrationLog) {
  const auto g = std::make_shared<const WeightedGraph>(complete_graph(16));
  BuildConfig cfg;
  cfg.seed = 3;
  cfg.workers = 2;
  const json j = orchestrate_build(g, cfg);
  EXPECT_EQ(j["worker_count"], 2);
  EXPECT_EQ(j["k_sequence"][0], 1);
  EXPECT_EQ(j["rounds"].size(), j["k_sequence"].size());
  EXPECT_TRUE(j["rounds"][0]["verification"].is_array());
  EXPECT_EQ(j["overlay"]["vertices"], 16);
  EXPECT_EQ(j.dump(), json(orchestrate_build(g, cfg)).dump());
}

TEST(ReportJson, Reports) {
  const auto g = std::make_shared<const WeightedGraph>(complete_graph(8));
  const auto o = build_overlay(g, 2, 1);
  json cover = mixing_cover_test(o, 1);
  EXPECT_EQ(cover["test"], "mixing-cover");
  EXPECT_TRUE(cover.contains("length_cap"));
  SpectralOptions so;
  json spectral = spectral_approximation_check(*g, o, so);
  EXPECT_TRUE(spectral.contains("eigen_min"));
  json cuts = cut_approximation_check(*g, o, 1.0);
  EXPECT_TRUE(cuts["witness"].is_array());
  json corr = negative_correlation_test(cycle_graph(4), 100, 1);
  EXPECT_EQ(corr["trees_enumerated"], 4);
  json plan = plan_route(o, 0, 7, RouteOptions{}, 2);
  EXPECT_EQ(plan["digest"].get<std::string>().size(), 16u);
  json bound = max_unmonitored_bound(1021, 6, 0.5);
  EXPECT_EQ(bound["rounded"], 910);
  json anon = anonymity_degree(std::vector<double>{0.5, 0.5});
  EXPECT_EQ(anon["degree"], 1.0);
}

TEST(ReportJson, TraceLinesAndCsv) {
  const auto g = random_regular_graph(40, 3, 2);
  TrafficOptions opt;
  const auto trace = simulate_traffic(g, {}, MonitorSet::random(40, 10, 1), 5, opt, 3);
  const std::string lines = trace_jsonl(trace);
  std::size_t count = 0;
  for (std::size_t pos = 0; (pos = lines.find('\n', pos)) != std::string::npos; ++pos) ++count;
  EXPECT_EQ(count, 5u);
  const json first = json::parse(lines.substr(0, lines.find('\n')));
  EXPECT_TRUE(first.contains("digest"));
  EXPECT_TRUE(first.contains("monitored"));
  EXPECT_TRUE(first.contains("first_monitor"));

  const auto rbc = rbc_table(UniformNeighborKernel(g), 0, 39, 2, 2);
  const std::string csv = rbc_csv(rbc);
  EXPECT_EQ(csv.rfind("vertex,delta,expected_visits\n0,1,", 0), 0u);
}
