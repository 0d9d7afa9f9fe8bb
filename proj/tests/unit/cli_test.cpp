#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#ifndef MONET_CLI
#error "MONET_CLI must name the CLI binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
Run run(const std::string& args) {
  const std::string cmd = std::string(MONET_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("monet_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string data(const std::string& name) { return std::string(MONET_TEST_DATA_DIR) + "/" + name; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, BuildOnK6) {
  const auto r = run("--seed 7 --graph " + data("k6.txt") + " --out " + path("o.txt") + " --no-timestamp build --k 2");
  ASSERT_EQ(r.code, 0) << r.out;
  const json log = json::parse(r.out);
  EXPECT_EQ(log["command"], "build");
  EXPECT_EQ(log["config"]["k"], 2);
  EXPECT_EQ(log["config"]["seed"], 7);
  EXPECT_LE(log["result"]["overlay"]["distinct_edges"].get<int>(), 10);
  EXPECT_FALSE(log.contains("timestamp"));
  const std::string overlay = slurp(path("o.txt"));
  EXPECT_EQ(overlay.rfind("# {", 0), 0u);
}

TEST_F(Cli, DistributedBuildDoubles) {
  ASSERT_EQ(run("--seed 2 generate --type complete --n 64 --out " + path("k64.txt")).code, 0);
  const auto r = run("--seed 2 --graph " + path("k64.txt") + " --out " + path("o.txt") +
                     " --no-timestamp build --distributed --workers 4 --log " + path("log.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const json log = json::parse(slurp(path("log.json")));
  const auto& ks = log["result"]["orchestration"]["k_sequence"];
  ASSERT_GE(ks.size(), 1u);
  for (std::size_t i = 0; i < ks.size(); ++i) EXPECT_EQ(ks[i].get<std::size_t>(), std::size_t{1} << i);
}

TEST_F(Cli, TimestampPresentByDefault) {
  const auto r = run("--seed 7 --graph " + data("k6.txt") + " --out " + path("o.txt") + " build --k 1");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(json::parse(r.out).contains("timestamp"));
}

TEST_F(Cli, DisconnectedGraph) {
  const auto r = run("--graph " + data("disconnected.txt") + " --out " + path("o.txt") + " build --k 2");
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.out.find("graph not connected"), std::string::npos) << r.out;
}

TEST_F(Cli, BadInputs) {
  const auto parse = run("--graph " + data("bad_weight.txt") + " --out " + path("o.txt") + " build --k 1");
  EXPECT_EQ(parse.code, 3);
  EXPECT_NE(parse.out.find("non-positive weight at line 1"), std::string::npos);
  EXPECT_EQ(run("--graph /nonexistent/file --out x build --k 1").code, 3);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--format xml verify").code, 2);
  EXPECT_EQ(run("--graph " + data("k6.txt") + " --out " + path("o.txt") + " build").code, 2);
}

TEST_F(Cli, VerifySpectralIdentity) {
  const auto r = run("--graph " + data("k6.txt") + " --no-timestamp verify --spectral");
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["result"]["spectral"]["ratio_min"], 1.0);
  EXPECT_EQ(j["result"]["spectral"]["ratio_max"], 1.0);
  EXPECT_TRUE(j["result"]["pass"].get<bool>());
}

TEST_F(Cli, VerifyMixingOnPathFails) {
  ASSERT_EQ(run("generate --type path --n 256 --out " + path("p.txt")).code, 0);
  const auto r = run("--seed 3 --graph " + path("p.txt") + " --no-timestamp verify --mixing");
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_FALSE(json::parse(r.out)["result"]["pass"].get<bool>());
}

TEST_F(Cli, VerifyCutsSizeCap) {
  ASSERT_EQ(run("generate --type complete --n 25 --out " + path("k25.txt")).code, 0);
  const auto r = run("--graph " + path("k25.txt") + " verify --cuts");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("cap"), std::string::npos) << r.out;
}

TEST_F(Cli, VerifyAllChecksOnBuiltOverlay) {
  ASSERT_EQ(run("--seed 4 --graph " + data("k6.txt") + " --out " + path("o.txt") + " build --k 3 --mode scaled").code, 0);
  const auto r = run("--seed 4 --graph " + data("k6.txt") + " --no-timestamp verify --overlay " + path("o.txt") +
                     " --mixing --parallel --cuts --correlation --samples 2000 --epsilon 0.9");
  ASSERT_LE(r.code, 1) << r.out;
  const json j = json::parse(r.out);
  for (const char* key : {"mixing", "parallel", "cuts", "spectral", "correlation"}) {
    if (std::string(key) == "spectral") continue;
    EXPECT_TRUE(j["result"].contains(key)) << key;
  }
  EXPECT_TRUE(j["result"]["correlation"]["exact_holds"].get<bool>());
}

TEST_F(Cli, RouteAndSimulate) {
  ASSERT_EQ(run("--seed 1 generate --type regular --n 200 --degree 3 --out " + path("g.txt")).code, 0);
  const auto route = run("--seed 5 --graph " + path("g.txt") +
                         " --no-timestamp route --s 3 --t 50 --r 2 --revisit non-revisiting --log-base 3");
  ASSERT_EQ(route.code, 0) << route.out;
  const json plan = json::parse(route.out)["result"];
  EXPECT_EQ(plan["segments"].size(), 3u);
  EXPECT_EQ(plan["segment_hops"], 4);

  std::ofstream(path("flows.txt")) << "0 1\n5 9\n";
  const auto sim = run("--seed 5 --graph " + path("g.txt") + " --no-timestamp simulate --flows " + path("flows.txt") +
                       " --random-monitors 20 --trials 40 --trace " + path("trace.jsonl"));
  ASSERT_EQ(sim.code, 0) << sim.out;
  EXPECT_EQ(json::parse(sim.out)["result"]["trials"], 40);
  std::ifstream trace(path("trace.jsonl"));
  std::string line;
  int lines = 0;
  while (std::getline(trace, line)) {
    const json rec = json::parse(line);
    EXPECT_TRUE(rec.contains("digest"));
    ++lines;
  }
  EXPECT_EQ(lines, 40);
}

TEST_F(Cli, AnalyzeMonitorsAllAndNone) {
  ASSERT_EQ(run("--seed 1 generate --type regular --n 128 --degree 4 --out " + path("g.txt")).code, 0);
  for (const auto& [which, expected] : {std::pair{"all", 1.0}, std::pair{"none", 0.0}}) {
    const auto r = run("--seed 2 --graph " + path("g.txt") + " --no-timestamp analyze --trials 2000 --monitors " + which);
    ASSERT_EQ(r.code, 0) << r.out;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["result"]["monte_carlo"]["monitored_fraction"], expected) << which;
  }
  EXPECT_EQ(run("--graph " + path("g.txt") + " analyze --monitors all --random-monitors 3").code, 2);
}

TEST_F(Cli, AnalyzeCsvAndReport) {
  ASSERT_EQ(run("--seed 1 generate --type regular --n 64 --degree 4 --out " + path("g.txt")).code, 0);
  const auto an = run("--seed 2 --graph " + path("g.txt") + " --no-timestamp --out " + path("an.json") +
                      " analyze --trials 500 --unmonitored 40 --csv " + path("rbc.csv"));
  ASSERT_EQ(an.code, 0) << an.out;
  EXPECT_EQ(slurp(path("rbc.csv")).rfind("vertex,delta,expected_visits\n", 0), 0u);
  const auto csv = run("--seed 2 --graph " + path("g.txt") + " --no-timestamp --format csv analyze --trials 500 --unmonitored 40");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("key,value\n", 0), 0u);
  EXPECT_NE(csv.out.find("result.monitored_prob_analytic,"), std::string::npos);
  const auto rep = run("--no-timestamp report " + path("an.json"));
  ASSERT_EQ(rep.code, 0) << rep.out;
  EXPECT_EQ(json::parse(rep.out)["result"]["entries"][0]["command"], "analyze");
}

TEST_F(Cli, ByteReproducible) {
  const std::string args = "--seed 9 --graph " + data("k6.txt") + " --no-timestamp ";
  ASSERT_EQ(run(args + "--out " + path("a.txt") + " build --k 3 --log " + path("a.json")).code, 0);
  ASSERT_EQ(run(args + "--out " + path("b.txt") + " build --k 3 --log " + path("b.json")).code, 0);
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
  const auto v1 = run(args + "verify --overlay " + path("a.txt") + " --mixing --spectral --epsilon 0.9");
  const auto v2 = run(args + "verify --overlay " + path("b.txt") + " --mixing --spectral --epsilon 0.9");
  const auto strip = [](std::string s) {
    // The echoed overlay path is the only difference.
    const auto pos = s.find("\"overlay\"");
    return s.substr(0, pos) + s.substr(s.find('\n', pos));
  };
  EXPECT_EQ(strip(v1.out), strip(v2.out));
}
