// monet: build, verify and analyse random-spanning-tree expander overlays.

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "monet/distributed.hpp"
#include "monet/error.hpp"
#include "monet/generators.hpp"
#include "monet/graph.hpp"
#include "monet/metrics.hpp"
#include "monet/overlay.hpp"
#include "monet/report_json.hpp"
#include "monet/routing.hpp"
#include "monet/verifier.hpp"

using nlohmann::json;
using namespace monet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct Global {
  std::uint64_t seed = 1;
  std::string graph;
  std::string out;
  std::string format = "json";
  bool no_timestamp = false;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

void flatten(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out += prefix + "," + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

std::string render(const json& doc, const std::string& format) {
  if (format == "csv") {
    std::string out = "key,value\n";
    flatten(doc, "", out);
    return out;
  }
  return doc.dump(2) + "\n";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Emits a result document to --out or stdout, with the echoed config.
void emit(const Global& g, const std::string& command, json config, json result) {
  config["seed"] = g.seed;
  if (!g.graph.empty()) config["graph"] = g.graph;
  json doc = {{"command", command}, {"config", std::move(config)}, {"result", std::move(result)}};
  if (!g.no_timestamp) doc["timestamp"] = utc_timestamp();
  const std::string text = render(doc, g.format);
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_text(g.out, text);
  }
}

std::shared_ptr<const WeightedGraph> load_base(const Global& g) {
  if (g.graph.empty()) throw Error(ErrorCode::kInvalidParameter, "--graph is required");
  return std::make_shared<const WeightedGraph>(read_graph_file(g.graph));
}

OverlayGraph load_overlay(const Global& g, const std::string& overlay_path) {
  auto base = load_base(g);
  if (overlay_path.empty()) return OverlayGraph::from_base(base);
  return read_overlay_file(overlay_path, base);
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string type = "complete";
  std::size_t n = 8;
  std::size_t degree = 3;
  double p = 0.1;
  double min_weight = 1.0;
  double max_weight = 1.0;
};

int cmd_generate(const Global& g, const GenerateArgs& a) {
  WeightedGraph graph;
  if (a.type == "complete") graph = complete_graph(a.n);
  else if (a.type == "path") graph = path_graph(a.n);
  else if (a.type == "cycle") graph = cycle_graph(a.n);
  else if (a.type == "star") graph = star_graph(a.n);
  else if (a.type == "regular") graph = random_regular_graph(a.n, a.degree, g.seed);
  else if (a.type == "random") graph = random_connected_graph(a.n, a.p, a.min_weight, a.max_weight, g.seed);
  else throw Error(ErrorCode::kInvalidParameter, "unknown graph type '" + a.type + "'");
  const std::string text = format_graph(graph);
  if (g.out.empty()) std::cout << text;
  else write_text(g.out, text);
  return kExitOk;
}

struct BuildArgs {
  std::size_t k = 0;
  bool distributed = false;
  std::size_t workers = 1;
  std::string mode = "plain";
  std::string verification = "mixing";
  double cap_factor = 10.0;
  bool accumulated_rule = false;
  std::size_t repetitions = 1;
  std::optional<std::size_t> round_cap;
  std::string log;
};

int cmd_build(const Global& g, const BuildArgs& a) {
  if (g.out.empty()) throw Error(ErrorCode::kInvalidParameter, "build needs --out for the overlay file");
  auto base = load_base(g);
  const WeightMode mode = parse_weight_mode(a.mode);
  json config = {{"mode", to_string(mode)}, {"distributed", a.distributed}, {"overlay", g.out}};
  json result;
  std::optional<OverlayGraph> overlay;
  bool ok = true;
  if (a.distributed) {
    BuildConfig bc;
    bc.workers = a.workers;
    bc.seed = g.seed;
    bc.mode = mode;
    bc.round_cap = a.round_cap;
    bc.verification.kind = a.verification == "parallel" ? VerificationKind::kParallelCover
                                                        : VerificationKind::kMixingCover;
    if (a.verification != "parallel" && a.verification != "mixing") {
      throw Error(ErrorCode::kInvalidParameter, "unknown verification '" + a.verification + "'");
    }
    bc.verification.cover.cap_factor = a.cap_factor;
    bc.verification.cover.rule = a.accumulated_rule ? NeighborRule::kAccumulatedSet : NeighborRule::kCurrentVertex;
    bc.verification.repetitions = a.repetitions;
    config["workers"] = a.workers;
    config["verification"] = to_string(bc.verification.kind);
    config["cap_factor"] = a.cap_factor;
    config["rule"] = to_string(bc.verification.cover.rule);
    config["repetitions"] = a.repetitions;
    config["round_cap"] = a.round_cap ? json(*a.round_cap) : json(nullptr);
    auto orchestration = orchestrate_build(base, bc);
    result["orchestration"] = orchestration;
    ok = orchestration.success;
    overlay = std::move(orchestration.overlay);
  } else {
    if (a.k < 1) throw Error(ErrorCode::kInvalidParameter, "build needs --k >= 1 or --distributed");
    config["k"] = a.k;
    overlay = build_overlay(base, a.k, g.seed, mode);
  }
  result["overlay"] = overlay_summary(*overlay);
  write_text(g.out, format_overlay(*overlay));

  Global log_target = g;
  log_target.out = a.log;
  emit(log_target, "build", std::move(config), std::move(result));
  return ok ? kExitOk : kExitCheckFailed;
}

struct VerifyArgs {
  std::string overlay;
  bool mixing = false;
  bool parallel = false;
  bool spectral = false;
  bool cuts = false;
  bool correlation = false;
  double cap_factor = 10.0;
  bool accumulated_rule = false;
  std::size_t walk_count = 0;
  std::size_t walk_length = 0;
  double epsilon = 0.5;
  std::size_t probes = 200;
  double alpha = 1.0;
  std::size_t samples = 10000;
};

int cmd_verify(const Global& g, VerifyArgs a) {
  const OverlayGraph overlay = load_overlay(g, a.overlay);
  if (!(a.mixing || a.parallel || a.spectral || a.cuts || a.correlation)) a.mixing = true;
  json config = {{"overlay", a.overlay.empty() ? json(nullptr) : json(a.overlay)}};
  json result;
  bool pass = true;
  if (a.mixing) {
    CoverOptions opt;
    opt.cap_factor = a.cap_factor;
    opt.rule = a.accumulated_rule ? NeighborRule::kAccumulatedSet : NeighborRule::kCurrentVertex;
    config["mixing"] = {{"cap_factor", a.cap_factor}, {"rule", to_string(opt.rule)}};
    auto r = mixing_cover_test(overlay, g.seed, opt);
    pass = pass && r.success;
    result["mixing"] = r;
  }
  if (a.parallel) {
    VerificationConfig vc;
    vc.kind = VerificationKind::kParallelCover;
    vc.walk_count = a.walk_count;
    vc.walk_length = a.walk_length;
    std::vector<CoverReport> reports;
    const bool ok = run_verification(overlay.graph(), vc, g.seed, &reports);
    config["parallel"] = {{"walk_count", a.walk_count}, {"walk_length", a.walk_length}};
    pass = pass && ok;
    result["parallel"] = reports.front();
  }
  if (a.cuts) {
    config["cuts"] = {{"alpha", a.alpha}};
    auto r = cut_approximation_check(overlay.base(), overlay, a.alpha);
    pass = pass && r.pass;
    result["cuts"] = r;
  }
  if (a.spectral) {
    SpectralOptions opt;
    opt.epsilon = a.epsilon;
    opt.probes = a.probes;
    opt.seed = g.seed;
    config["spectral"] = {{"epsilon", a.epsilon}, {"probes", a.probes}};
    auto r = spectral_approximation_check(overlay.base(), overlay, opt);
    pass = pass && r.pass;
    result["spectral"] = r;
  }
  if (a.correlation) {
    config["correlation"] = {{"samples", a.samples}};
    auto r = negative_correlation_test(overlay.base(), a.samples, g.seed);
    pass = pass && r.exact_holds;
    result["correlation"] = r;
  }
  result["pass"] = pass;
  emit(g, "verify", std::move(config), std::move(result));
  return pass ? kExitOk : kExitCheckFailed;
}

struct RouteArgs {
  std::string overlay;
  std::size_t r = 2;
  std::string mode = "incremental";
  std::string revisit = "free";
  std::optional<double> log_base;
  std::optional<std::size_t> segment_length;
  double p_ext = 0.25;
  Vertex s = 0;
  std::optional<Vertex> t;
};

RouteOptions route_options(const RouteArgs& a) {
  RouteOptions o;
  o.intermediates = a.r;
  o.mode = parse_route_mode(a.mode);
  o.revisit = parse_revisit_policy(a.revisit);
  o.log_base = a.log_base;
  o.segment_length = a.segment_length;
  o.extension_probability = a.p_ext;
  return o;
}

json route_config(const RouteArgs& a, const RouteOptions& o, std::size_t l) {
  return {{"overlay", a.overlay.empty() ? json(nullptr) : json(a.overlay)},
          {"r", o.intermediates},
          {"mode", to_string(o.mode)},
          {"revisit", to_string(o.revisit)},
          {"log_base", a.log_base ? json(*a.log_base) : json(nullptr)},
          {"segment_hops", l},
          {"p_ext", o.extension_probability}};
}

int cmd_route(const Global& g, const RouteArgs& a) {
  const OverlayGraph overlay = load_overlay(g, a.overlay);
  const RouteOptions opt = route_options(a);
  const Vertex t = a.t.value_or(static_cast<Vertex>(overlay.vertex_count() - 1));
  json config = route_config(a, opt, segment_length(overlay.graph(), opt));
  config["s"] = a.s;
  config["t"] = t;
  emit(g, "route", std::move(config), plan_route(overlay, a.s, t, opt, g.seed));
  return kExitOk;
}

struct MonitorArgs {
  std::string monitors;  // file path, "all" or "none"
  std::optional<std::size_t> random_monitors;
  std::optional<std::size_t> unmonitored;
  std::optional<std::uint64_t> monitor_seed;
};

MonitorSet load_monitors(const Global& g, const MonitorArgs& a, std::size_t n, json& config) {
  const std::uint64_t seed = a.monitor_seed.value_or(g.seed);
  int sources = (a.monitors.empty() ? 0 : 1) + (a.random_monitors ? 1 : 0) + (a.unmonitored ? 1 : 0);
  if (sources != 1) {
    throw Error(ErrorCode::kInvalidParameter,
                "choose exactly one of --monitors, --random-monitors, --unmonitored");
  }
  MonitorSet m;
  if (a.monitors == "all") {
    m = MonitorSet::all(n);
    config["monitors"] = "all";
  } else if (a.monitors == "none") {
    m = MonitorSet::none(n);
    config["monitors"] = "none";
  } else if (!a.monitors.empty()) {
    m = parse_monitor_set(read_text(a.monitors), n);
    config["monitors"] = a.monitors;
  } else {
    std::size_t count = 0;
    if (a.random_monitors) {
      count = *a.random_monitors;
    } else {
      if (*a.unmonitored > n) throw Error(ErrorCode::kInvalidParameter, "--unmonitored exceeds the vertex count");
      count = n - *a.unmonitored;
    }
    m = MonitorSet::random(n, count, seed);
    config["monitors"] = {{"random", count}, {"seed", seed}};
  }
  config["monitor_count"] = m.monitor_count();
  config["unmonitored_count"] = m.unmonitored_count();
  return m;
}

struct SimulateArgs {
  RouteArgs route;
  MonitorArgs monitors;
  std::string flows;
  std::size_t trials = 10000;
  std::string trace;
};

int cmd_simulate(const Global& g, const SimulateArgs& a) {
  const OverlayGraph overlay = load_overlay(g, a.route.overlay);
  TrafficOptions opt;
  opt.route = route_options(a.route);
  opt.keep_records = !a.trace.empty();
  json config = route_config(a.route, opt.route, segment_length(overlay.graph(), opt.route));
  const MonitorSet monitors = load_monitors(g, a.monitors, overlay.vertex_count(), config);
  std::vector<Flow> flows;
  if (!a.flows.empty()) flows = parse_flows(read_text(a.flows), overlay.vertex_count());
  config["flows"] = a.flows.empty() ? json("random") : json(a.flows);
  config["trials"] = a.trials;
  const TrafficTrace trace = simulate_traffic(overlay, flows, monitors, a.trials, opt, g.seed);
  if (!a.trace.empty()) {
    write_text(a.trace, trace_jsonl(trace));
    config["trace"] = a.trace;
  }
  emit(g, "simulate", std::move(config), trace);
  return kExitOk;
}

struct AnalyzeArgs {
  RouteArgs route;
  MonitorArgs monitors;
  std::size_t trials = 100000;
  std::optional<std::size_t> mix_count;
  std::size_t messages = 1;
  std::optional<std::size_t> attackers;
  double target = 0.5;
  Vertex rbc_source = 0;
  std::optional<Vertex> rbc_target;
  std::string csv;
};

int cmd_analyze(const Global& g, const AnalyzeArgs& a) {
  const OverlayGraph overlay = load_overlay(g, a.route.overlay);
  const std::size_t N = overlay.vertex_count();
  TrafficOptions opt;
  opt.route = route_options(a.route);
  opt.keep_records = false;
  const std::size_t l = segment_length(overlay.graph(), opt.route);
  const std::size_t r = opt.route.intermediates;
  json config = route_config(a.route, opt.route, l);
  const MonitorSet monitors = load_monitors(g, a.monitors, N, config);
  const std::size_t C = monitors.unmonitored_count();
  const std::size_t mix = a.mix_count.value_or(N);
  const std::size_t attackers = a.attackers.value_or(C);
  const Vertex rbc_t = a.rbc_target.value_or(static_cast<Vertex>(N - 1));
  config["trials"] = a.trials;
  config["mix_count"] = mix;
  config["messages"] = a.messages;
  config["attackers"] = attackers;
  config["target"] = a.target;
  config["rbc_source"] = a.rbc_source;
  config["rbc_target"] = rbc_t;

  json result;
  result["N"] = N;
  result["C"] = C;
  result["beta"] = monitors.beta();
  result["segment_hops"] = l;
  result["walk_hops"] = (r + 1) * l;
  result["overlay"] = overlay_summary(overlay);

  double analytic = 0.0;
  if (opt.route.revisit == RevisitPolicy::kNonRevisiting) {
    analytic = prob_route_monitored(N, C, (r + 1) * l);
    result["analytic_model"] = "without-replacement product";
  } else {
    analytic = prob_route_monitored_independent(N, C, (r + 1) * l);
    result["analytic_model"] = "independent visits";
  }
  result["monitored_prob_analytic"] = analytic;
  result["monitored_prob_product"] = prob_route_monitored(N, C, (r + 1) * l);

  const TrafficTrace trace = simulate_traffic(overlay, {}, monitors, a.trials, opt, g.seed);
  json mc = trace;
  mc["difference"] = trace.monitored_fraction - analytic;
  result["monte_carlo"] = std::move(mc);

  result["confinement_bound"] = confinement_bound(monitors.beta(), l);
  result["max_unmonitored"] = max_unmonitored_bound(N, l, a.target);
  try {
    const double mu = static_cast<double>((r + 1) * l) * static_cast<double>(N - C) / static_cast<double>(N);
    result["chernoff"] = chernoff_tail_bound(N, C, (r + 1) * l, mu);
  } catch (const Error& e) {
    result["chernoff"] = {{"error", e.what()}};
  }
  result["hidden_state"] = hidden_state_probability({N, mix, a.messages, monitors.monitor_count(), r, 2.0});

  const RbcTable rbc = rbc_table(UniformNeighborKernel(overlay.graph()), a.rbc_source, rbc_t, l, r + 1);
  json rbc_summary = {{"source", rbc.source}, {"destination", rbc.destination}, {"kernel", rbc.kernel}};
  double lo = INFINITY, hi = -INFINITY, sum = 0.0;
  for (Vertex v = 0; v < N; ++v) {
    if (v == rbc.source) continue;
    lo = std::min(lo, rbc.delta[v]);
    hi = std::max(hi, rbc.delta[v]);
    sum += rbc.delta[v];
  }
  rbc_summary["delta_min"] = lo;
  rbc_summary["delta_max"] = hi;
  rbc_summary["delta_mean"] = sum / static_cast<double>(N - 1);
  result["rbc"] = std::move(rbc_summary);
  if (!a.csv.empty()) {
    write_text(a.csv, rbc_csv(rbc));
    config["csv"] = a.csv;
  }

  // How well the first intermediate hides the source.
  result["anonymity"] = anonymity_degree(rbc.occupancy[l]);
  try {
    result["attack_cost"] = attack_cost_report(overlay, attackers, (r + 1) * l);
  } catch (const Error& e) {
    result["attack_cost"] = {{"error", e.what()}};
  }
  result["monitor_count_estimate"] = monitor_count_estimate(N, l);
  emit(g, "analyze", std::move(config), std::move(result));
  return kExitOk;
}

struct ReportArgs {
  std::vector<std::string> inputs;
};

// Pulls the headline numbers out of earlier command outputs.
int cmd_report(const Global& g, const ReportArgs& a) {
  json summary = json::array();
  bool all_ok = true;
  for (const auto& path : a.inputs) {
    const json doc = json::parse(read_text(path));
    const std::string command = doc.value("command", "");
    const json& res = doc.at("result");
    json row = {{"file", path}, {"command", command}};
    if (command == "build") {
      row["overlay"] = res.at("overlay");
      if (res.contains("orchestration")) {
        row["k_sequence"] = res["orchestration"]["k_sequence"];
        row["success"] = res["orchestration"]["success"];
        all_ok = all_ok && res["orchestration"]["success"].get<bool>();
      }
    } else if (command == "verify") {
      row["pass"] = res.at("pass");
      all_ok = all_ok && res["pass"].get<bool>();
    } else if (command == "analyze") {
      for (const char* key : {"N", "C", "segment_hops", "monitored_prob_analytic", "confinement_bound",
                              "monitor_count_estimate"}) {
        row[key] = res.at(key);
      }
      row["monte_carlo"] = res.at("monte_carlo").at("monitored_fraction");
    } else if (command == "simulate") {
      row["monitored_fraction"] = res.at("monitored_fraction");
      row["wilson95"] = res.at("wilson95");
    }
    summary.push_back(std::move(row));
  }
  emit(g, "report", {{"inputs", a.inputs}}, {{"entries", summary}, {"all_ok", all_ok}});
  return all_ok ? kExitOk : kExitCheckFailed;
}

void add_route_flags(CLI::App* sub, RouteArgs& a) {
  sub->add_option("--overlay", a.overlay, "Overlay file (defaults to the base graph)");
  sub->add_option("--r", a.r, "Intermediate destinations");
  sub->add_option("--mode", a.mode, "incremental | loose");
  sub->add_option("--revisit", a.revisit, "free | non-revisiting");
  sub->add_option("--log-base", a.log_base, "Log base for the segment length");
  sub->add_option("--segment-length", a.segment_length, "Fix the segment length l");
  sub->add_option("--p-ext", a.p_ext, "Loose-mode extension probability");
}

void add_monitor_flags(CLI::App* sub, MonitorArgs& a) {
  sub->add_option("--monitors", a.monitors, "Monitor file, 'all' or 'none'");
  sub->add_option("--random-monitors", a.random_monitors, "Pick m monitors uniformly");
  sub->add_option("--unmonitored", a.unmonitored, "Pick monitors leaving C vertices unmonitored");
  sub->add_option("--monitor-seed", a.monitor_seed, "Seed for random monitors (defaults to --seed)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random spanning tree expander overlays"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--graph", g.graph, "Base graph edge list");
  app.add_option("--out", g.out, "Output path (stdout if omitted)");
  app.add_option("--format", g.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit timestamps from output");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a generated graph");
  generate->add_option("--type", gen.type, "complete | path | cycle | star | regular | random");
  generate->add_option("--n", gen.n, "Vertex count");
  generate->add_option("--degree", gen.degree, "Degree for regular graphs");
  generate->add_option("--p", gen.p, "Extra edge probability for random graphs");
  generate->add_option("--min-weight", gen.min_weight);
  generate->add_option("--max-weight", gen.max_weight);

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build an overlay from k random spanning trees");
  build_cmd->add_option("--k", build.k, "Number of trees");
  build_cmd->add_flag("--distributed", build.distributed, "Double k until verification passes");
  build_cmd->add_option("--workers", build.workers, "Worker units for --distributed");
  build_cmd->add_option("--mode", build.mode, "plain | resistance-scaled");
  build_cmd->add_option("--verification", build.verification, "mixing | parallel");
  build_cmd->add_option("--cap-factor", build.cap_factor, "Cover walk cap factor");
  build_cmd->add_flag("--accumulated-rule", build.accumulated_rule, "Step over the accumulated neighbourhood");
  build_cmd->add_option("--repetitions", build.repetitions, "Verification runs per round");
  build_cmd->add_option("--round-cap", build.round_cap, "Maximum rounds");
  build_cmd->add_option("--log", build.log, "JSON log path (stdout if omitted)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check an overlay");
  verify_cmd->add_option("--overlay", verify.overlay, "Overlay file (defaults to the base graph)");
  verify_cmd->add_flag("--mixing", verify.mixing, "Mixing-rate cover test");
  verify_cmd->add_flag("--parallel", verify.parallel, "Parallel short-walk cover test");
  verify_cmd->add_flag("--spectral", verify.spectral, "Spectral approximation check");
  verify_cmd->add_flag("--cuts", verify.cuts, "Cut approximation check");
  verify_cmd->add_flag("--correlation", verify.correlation, "Negative correlation test on the base");
  verify_cmd->add_option("--cap-factor", verify.cap_factor);
  verify_cmd->add_flag("--accumulated-rule", verify.accumulated_rule);
  verify_cmd->add_option("--walk-count", verify.walk_count);
  verify_cmd->add_option("--walk-length", verify.walk_length);
  verify_cmd->add_option("--epsilon", verify.epsilon);
  verify_cmd->add_option("--probes", verify.probes);
  verify_cmd->add_option("--alpha", verify.alpha);
  verify_cmd->add_option("--samples", verify.samples);

  RouteArgs route;
  auto* route_cmd = app.add_subcommand("route", "Plan one route");
  add_route_flags(route_cmd, route);
  route_cmd->add_option("--s", route.s, "Source");
  route_cmd->add_option("--t", route.t, "Destination (defaults to n-1)");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Route traffic against a monitor set");
  add_route_flags(sim_cmd, sim.route);
  add_monitor_flags(sim_cmd, sim.monitors);
  sim_cmd->add_option("--flows", sim.flows, "Flows file of \"s t\" lines (random pairs if omitted)");
  sim_cmd->add_option("--trials", sim.trials);
  sim_cmd->add_option("--trace", sim.trace, "JSON-lines trace path");

  AnalyzeArgs an;
  auto* an_cmd = app.add_subcommand("analyze", "Analytic metrics with a Monte Carlo cross-check");
  add_route_flags(an_cmd, an.route);
  add_monitor_flags(an_cmd, an.monitors);
  an_cmd->add_option("--trials", an.trials);
  an_cmd->add_option("--mix-count", an.mix_count, "Nodes eligible as intermediates (defaults to N)");
  an_cmd->add_option("--messages", an.messages, "Observed messages");
  an_cmd->add_option("--attackers", an.attackers, "Attacker count (defaults to C)");
  an_cmd->add_option("--target", an.target, "Confinement target for the C bound");
  an_cmd->add_option("--rbc-source", an.rbc_source);
  an_cmd->add_option("--rbc-target", an.rbc_target);
  an_cmd->add_option("--csv", an.csv, "Per-vertex RBC CSV path");

  ReportArgs rep;
  auto* rep_cmd = app.add_subcommand("report", "Summarise earlier outputs");
  rep_cmd->add_option("inputs", rep.inputs, "JSON outputs")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(g, gen);
    if (*build_cmd) return cmd_build(g, build);
    if (*verify_cmd) return cmd_verify(g, verify);
    if (*route_cmd) return cmd_route(g, route);
    if (*sim_cmd) return cmd_simulate(g, sim);
    if (*an_cmd) return cmd_analyze(g, an);
    if (*rep_cmd) return cmd_report(g, rep);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidParameter ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
