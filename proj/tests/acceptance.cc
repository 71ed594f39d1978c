// Acceptance checks. `rdcn_acceptance N [path/to/rdcn]` runs criterion N and
// prints one PASS/FAIL line; with no arguments every criterion runs except 9,
// which needs the CLI binary. Exit status is 0 only if everything passed.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "rdcn/analytics.h"
#include "rdcn/emulated_graph.h"
#include "rdcn/oracle.h"
#include "rdcn/rng.h"
#include "rdcn/schedule_io.h"
#include "rdcn/sim.h"
#include "rdcn/topology.h"
#include "test_util.h"

namespace rdcn {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Reference fabric of the design tradeoff table.
constexpr int kNt = 16;
constexpr int kNu = 2;
constexpr double kDelta = 100e-6;
constexpr double kCap = 400e9;

SimpleGraph Complete(int n) {
  Digraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) g.AddEdge(u, v);
    }
  }
  return g.ToSimpleGraph(1.0);
}

double NoSelfCapacity(const SimpleGraph& g) {
  double c = 0;
  for (const auto& [e, cap] : g.edges()) {
    if (!e.self_loop()) c += cap;
  }
  return c;
}

Outcome TradeoffTableRows() {
  const auto start = Clock::now();
  const DesignReport d2 = EvaluateDegree(2, kNt, kNu, kDelta, kCap);
  const DesignReport d16 = EvaluateDegree(16, kNt, kNu, kDelta, kCap);
  const DesignReport d4 = EvaluateDegree(4, kNt, kNu, kDelta, kCap);
  DesignInput in{kNt, kNu, kDelta, 10e-6, kCap, 20 * kMegabyteBits, std::nullopt, 1};
  const Design designed = MakeDesign(in);
  const double runtime = Seconds(start);

  const double d4_delay_us = d4.max_delay_s * 1e6;
  const bool ok = d2.theta == 0.125 && d16.theta == 0.5 &&
                  std::abs(d16.max_delay_s * 1e6 - 1600) < 1e-9 &&
                  d16.per_node_buffer_bits == 80 * kMegabyteBits && d4.theta == 0.25 &&
                  d4.per_node_buffer_bits == 20 * kMegabyteBits && d4_delay_us <= 850 &&
                  designed.report.degree == 4 && runtime < 1.0;
  return {ok, fmt::format("d=2 theta={} | d=16 theta={} delay={}us buffer={}MB | d=4 theta={} "
                          "buffer={}MB delay={}us | design(B=20MB) d={} | {:.3f}s",
                          d2.theta, d16.theta, d16.max_delay_s * 1e6,
                          d16.per_node_buffer_bits / kMegabyteBits, d4.theta,
                          d4.per_node_buffer_bits / kMegabyteBits, d4_delay_us,
                          designed.report.degree, runtime)};
}

Outcome LambertSolver() {
  const auto start = Clock::now();
  const int d = OptimalDegreeDelay(kNt, kNu, kDelta, 850e-6);
  Rng rng(2024);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    // Alternate branches; the principal branch also covers positive x.
    const bool lower = i % 2 == 1;
    const double x = lower ? -std::exp(-1.0) * rng.Uniform()
                           : -std::exp(-1.0) + rng.Uniform() * (10 + std::exp(-1.0));
    if (lower && x == 0) continue;
    const double w = LambertW(lower ? LambertBranch::kMinusOne : LambertBranch::kPrincipal, x);
    worst = std::max(worst, std::abs(w * std::exp(w) - x));
  }
  const double runtime = Seconds(start);
  return {d == 4 && worst <= 1e-12 && runtime < 1.0,
          fmt::format("degree(L=850us)={} max residual={:.3g} | {:.3f}s", d, worst, runtime)};
}

Outcome TemporalEquivalence() {
  const auto start = Clock::now();
  Rng rng(3101);
  double worst = 0;
  int runs = 0;
  for (int instance = 0; instance < 50; ++instance) {
    const int nt = 3 + rng.Below(4);
    const int nu = 1 + rng.Below(2);
    const int period = 1 + rng.Below(3);
    const double du = rng.Below(2) ? 0.0 : 0.1;
    const PeriodicEvolvingGraph g =
        BuildPeriodicGraph(testing::RandomSchedule(nt, nu, period, rng, du));
    const SimpleGraph emulated = SimpleEmulatedGraph(g);
    const std::vector<double> caps = NodeCapacities(emulated);
    std::vector<DemandMatrix> demands{
        DemandMatrix::AllToAll(caps),
        DemandMatrix::Permutation(Matching::Shift(nt, 1 + rng.Below(nt - 1)).permutation(),
                                  caps)};
    DemandMatrix random(nt);
    for (int s = 0; s < nt; ++s) {
      for (int t = 0; t < nt; ++t) {
        if (s != t && rng.Below(3) == 0) random.Set(s, t, rng.Uniform());
      }
    }
    if (random.IsZero()) random.Set(0, 1, 1.0);
    demands.push_back(random);
    for (const DemandMatrix& m : demands) {
      const double temporal = TemporalMaxFlow(g, m, nt - 1).theta;
      const double emulated_theta = MaxConcurrentFlow(emulated, m, nt - 1).theta;
      worst = std::max(worst, std::abs(temporal - emulated_theta));
      ++runs;
    }
  }
  const double runtime = Seconds(start);
  return {worst <= 1e-6 && runtime < 300,
          fmt::format("{} instances x 3 demands ({} runs) max |diff|={:.3g} | {:.1f}s", 50, runs,
                      worst, runtime)};
}

Outcome CompleteGraphThroughput() {
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (int n : {4, 5, 6}) {
    const SimpleGraph g = Complete(n);
    const DemandMatrix m =
        DemandMatrix::Permutation(Matching::Shift(n, 1).permutation(), NodeCapacities(g));
    const double theta = MaxConcurrentFlow(g, m).theta;
    const double expected = n / (2.0 * n - 1);
    ok = ok && std::abs(theta - expected) <= 1e-6;
    detail += fmt::format("K{}: theta={:.9f} expected {}/{}={:.9f}; ", n, theta, n, 2 * n - 1,
                          expected);
  }
  const double runtime = Seconds(start);
  return {ok && runtime < 30, detail + fmt::format("{:.3f}s", runtime)};
}

Outcome CapacityBound() {
  Rng rng(55);
  int runs = 0;
  double worst_slack = 1e300;
  auto check = [&](const SimpleGraph& g, const DemandMatrix& m) {
    const OracleResult r = MaxConcurrentFlow(g, m);
    ++runs;
    if (r.theta <= 0) return;
    const double bound = ThroughputUpperBound(NoSelfCapacity(g), m.Total(), r.arl);
    worst_slack = std::min(worst_slack, bound + 1e-6 - r.theta);
  };
  for (int n : {4, 5, 6}) {
    const SimpleGraph g = Complete(n);
    check(g, DemandMatrix::Permutation(Matching::Shift(n, 1).permutation(), NodeCapacities(g)));
    check(g, DemandMatrix::AllToAll(NodeCapacities(g)));
  }
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + rng.Below(4);
    const int d = 2 + rng.Below(2);
    const SimpleGraph g = DebruijnDigraph(n, d).ToSimpleGraph(1.0);
    check(g, DemandMatrix::AllToAll(NodeCapacities(g)));
    check(g, DemandMatrix::Permutation(RandomDerangement(n, rng.Next()), NodeCapacities(g)));
  }
  Digraph cycle(4);
  for (int u = 0; u < 4; ++u) cycle.AddEdge(u, (u + 1) % 4);
  const SimpleGraph c4 = cycle.ToSimpleGraph(1.0);
  const WorstCase worst = WorstCasePermutation(c4);
  check(c4, DemandMatrix::Permutation(worst.permutation, NodeCapacities(c4)));
  const bool cycle_ok = std::abs(worst.theta - 1.0 / 3) <= 1e-12;
  return {worst_slack >= 0 && cycle_ok,
          fmt::format("{} oracle runs, min(bound+1e-6-theta)={:.3g} | 4-cycle worst theta={:.12f}",
                      runs, worst_slack, worst.theta)};
}

Outcome TopologyGeneration() {
  const Digraph g = DebruijnDigraph(16, 4);
  const int diameter = g.ToSimpleGraph(1.0).Diameter();
  const std::vector<Matching> matchings = DecomposeMatchings(g);
  Digraph joined(16);
  bool bijections = matchings.size() == 4;
  for (const Matching& m : matchings) {
    std::vector<bool> hit(16, false);
    for (int u = 0; u < 16; ++u) {
      const NodeId v = m.permutation()[u];
      bijections = bijections && v >= 0 && v < 16 && !hit[v];
      if (v >= 0 && v < 16) hit[v] = true;
      joined.AddEdge(u, v);
    }
  }
  const bool union_ok = joined.SortedEdges() == g.SortedEdges();
  const auto switches = AssignToSwitches(matchings, 2, 7);
  bool period_ok = switches.size() == 2;
  for (const auto& sw : switches) period_ok = period_ok && sw.size() == 2;

  // Round trip through the emulated graph: each (edge, slot) capacity counts
  // parallel circuits, c/Γ apiece with no reconfiguration loss.
  const Schedule s = MakeSchedule(16, 2, kDelta, 0.0, kCap, switches);
  const EmulatedGraph emulated(BuildPeriodicGraph(s));
  Digraph back(16);
  for (const auto& [le, cap] : emulated.edges()) {
    const long copies = std::lround(cap * s.period() / kCap);
    for (long k = 0; k < copies; ++k) back.AddEdge(le.edge.src, le.edge.dst);
  }
  const bool round_trip = back.SortedEdges() == g.SortedEdges();
  return {diameter == 2 && bijections && union_ok && period_ok && round_trip,
          fmt::format("diameter={} matchings={} bijective={} union={} period={} round-trip={}",
                      diameter, matchings.size(), bijections, union_ok,
                      period_ok ? 2 : -1, round_trip)};
}

// Simulator fabric: the reference fabric with a 1 µs reconfiguration time.
SimConfig FabricConfig(int degree, double buffer_mb, double load, uint64_t seed) {
  SimConfig cfg;
  auto switches = degree == kNt ? CompleteGraphSchedule(kNt, kNu)
                                : DebruijnSchedule(kNt, degree, kNu, seed);
  cfg.schedule = MakeSchedule(kNt, kNu, kDelta, 1e-6, kCap, std::move(switches));
  cfg.buffer_bits = static_cast<int64_t>(buffer_mb * kMegabyteBits);
  cfg.demand = DemandKind::kPermutation;
  cfg.demand_seed = seed;
  cfg.load = load;
  cfg.seed = seed;
  cfg.duration_slots = 2000;
  return cfg;
}

Outcome SimulatorTrend() {
  const std::vector<uint64_t> seeds{1, 2, 3, 4, 5};
  auto start = Clock::now();
  double d4 = 0, complete = 0;
  for (uint64_t seed : seeds) {
    d4 += RunSim(FabricConfig(4, 20, 0.25, seed)).throughput / seeds.size();
    complete += RunSim(FabricConfig(16, 20, 0.25, seed)).throughput / seeds.size();
  }
  const double shallow_runtime = Seconds(start);
  start = Clock::now();
  double deep = 0;
  for (uint64_t seed : seeds) {
    deep += RunSim(FabricConfig(16, 80, 0.5, seed)).throughput / seeds.size();
  }
  const double deep_runtime = Seconds(start);
  const double ratio = complete > 0 ? d4 / complete : INFINITY;
  const bool ok = ratio >= 1.2 && std::abs(deep - 0.5) <= 0.05 && shallow_runtime < 300 &&
                  deep_runtime < 300;
  return {ok, fmt::format("B=20MB load=0.25: d=4 {:.4f} vs complete {:.4f}, ratio {:.3f} (need "
                          ">= 1.2) | B=80MB load=0.5: complete {:.4f} (need 0.45..0.55) | "
                          "{:.1f}s + {:.1f}s",
                          d4, complete, ratio, deep, shallow_runtime, deep_runtime)};
}

Outcome SimulatorInvariants() {
  int runs = 0;
  int64_t checks = 0;
  bool ok = true;
  std::string failure;
  for (int degree : {4, 8, 16}) {
    for (double buffer_mb : {0.0, 2.0, 20.0, 80.0, -1.0}) {
      for (double load : {0.05, 0.25, 0.6}) {
        SimConfig cfg = FabricConfig(degree, std::max(buffer_mb, 0.0), load, 11);
        if (buffer_mb < 0) cfg.buffer_bits.reset();
        cfg.duration_slots = 600;
        SimResult r;
        try {
          r = RunSim(cfg);
        } catch (const std::logic_error& e) {
          ok = false;
          failure = e.what();
          continue;
        }
        ++runs;
        checks += r.invariant_checks;
        const bool conserved = r.delivered_bits + r.queued_bits + r.in_flight_bits +
                                   r.dropped_bits + r.host_backlog_bits ==
                               r.offered_bits;
        const bool ceiling = !cfg.buffer_bits || r.occupancy_max_bits <= *cfg.buffer_bits;
        if (!conserved || !ceiling || r.invariant_checks != 2 * r.slots) {
          ok = false;
          failure = fmt::format("d={} B={} load={}", degree, buffer_mb, load);
        }
      }
    }
  }
  return {ok, fmt::format("{} runs, {} per-slot checks{}", runs, checks,
                          failure.empty() ? "" : "; failed: " + failure)};
}

std::string Quote(const std::string& s) { return "'" + s + "'"; }

Outcome Determinism(const std::string& cli) {
  if (cli.empty()) return {false, "needs the rdcn binary path as second argument"};
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() /
                        fmt::format("rdcn-accept-{}", Clock::now().time_since_epoch().count());
  fs::create_directories(root);
  const std::string bin = Quote(cli);
  const std::string dir = root.string();

  // Setup shared by both runs.
  const std::string sched = dir + "/d4.json";
  if (std::system((bin + " gen-schedule --kind debruijn --nt 16 --d 4 --nu 2 --delta-r-us 1"
                         " --seed 3 --out " + Quote(sched)).c_str()) != 0) {
    return {false, "gen-schedule setup failed"};
  }
  nlohmann::json cfg{{"schedule_file", "d4.json"}, {"buffer_mb", 20},   {"load", 0.2},
                     {"demand", "permutation"},    {"demand_seed", 4}, {"duration_slots", 400},
                     {"seed", 9}};
  WriteTextFile(dir + "/sim.json", cfg.dump());

  const std::vector<std::string> commands{
      "design --nt 16 --nu 2 --delta-us 100 --delta-r-us 10 --cap-gbps 400 --buffer-mb 20 "
      "--seed 5 --out " + Quote(dir + "/design@"),
      "gen-schedule --kind expander --nt 16 --d 4 --nu 2 --seed 8",
      "gen-schedule --kind debruijn --nt 16 --d 8 --nu 2 --seed 8",
      "analyze --schedule " + Quote(sched),
      "oracle --schedule " + Quote(sched) + " --demand permutation:6 --witness",
      "oracle --complete 5 --demand worst",
      "simulate --config " + Quote(dir + "/sim.json") + " --occupancy-csv " +
          Quote(dir + "/occ@.csv"),
      "sweep --config " + Quote(dir + "/sim.json") + " --axis buffer --values 2,20",
      "table2"};
  auto run_all = [&](int round) {
    std::vector<std::string> outputs;
    for (size_t i = 0; i < commands.size(); ++i) {
      std::string cmd = commands[i];
      for (size_t at; (at = cmd.find('@')) != std::string::npos;) {
        cmd.replace(at, 1, std::to_string(round));
      }
      const std::string out = fmt::format("{}/out{}_{}.txt", dir, i, round);
      const int rc = std::system((bin + " " + cmd + " > " + Quote(out)).c_str());
      std::string text = fmt::format("rc={}\n", rc) + ReadTextFile(out);
      if (cmd.rfind("design", 0) == 0) {
        const std::string d = fmt::format("{}/design{}/", dir, round);
        text += ReadTextFile(d + "design.json") + ReadTextFile(d + "schedule.json");
      }
      if (cmd.rfind("simulate", 0) == 0) {
        text += ReadTextFile(fmt::format("{}/occ{}.csv", dir, round));
      }
      outputs.push_back(text);
    }
    return outputs;
  };
  const auto first = run_all(1);
  const auto second = run_all(2);
  int identical = 0;
  std::string differing;
  for (size_t i = 0; i < commands.size(); ++i) {
    const bool same = first[i] == second[i] && first[i].rfind("rc=0\n", 0) == 0;
    identical += same;
    if (!same) differing += " " + commands[i].substr(0, commands[i].find(' '));
  }
  fs::remove_all(root);
  return {identical == static_cast<int>(commands.size()),
          fmt::format("{}/{} commands byte-identical{}", identical, commands.size(),
                      differing.empty() ? "" : "; differ or failed:" + differing)};
}

}  // namespace
}  // namespace rdcn

int main(int argc, char** argv) {
  using namespace rdcn;
  const std::string cli = argc > 2 ? argv[2] : "";
  const std::map<int, std::pair<std::string, std::function<Outcome()>>> criteria{
      {1, {"design tradeoff table", TradeoffTableRows}},
      {2, {"lambert-w degree solver", LambertSolver}},
      {3, {"temporal/emulated equivalence", TemporalEquivalence}},
      {4, {"complete-graph throughput", CompleteGraphThroughput}},
      {5, {"capacity bound soundness", CapacityBound}},
      {6, {"topology generation", TopologyGeneration}},
      {7, {"simulator trend", SimulatorTrend}},
      {8, {"simulator invariants", SimulatorInvariants}},
      {9, {"determinism", [&] { return Determinism(cli); }}},
  };
  std::vector<int> selected;
  if (argc > 1) {
    selected.push_back(std::atoi(argv[1]));
    if (!criteria.count(selected[0])) {
      std::cerr << "unknown criterion " << argv[1] << "\n";
      return 2;
    }
  } else {
    for (const auto& [id, entry] : criteria) {
      if (id != 9) selected.push_back(id);
    }
  }
  bool all = true;
  for (int id : selected) {
    const auto& [name, fn] = criteria.at(id);
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << fmt::format("{} criterion {} ({}): {}\n", o.pass ? "PASS" : "FAIL", id, name,
                             o.detail);
  }
  return all ? 0 : 1;
}
