// rdcn: design, generate, analyze, bound and simulate periodic reconfigurable
// datacenter fabrics. Units at this boundary are µs, Gbps and MB (1e6 bytes);
// the library works in seconds and bits.

#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rdcn/analytics.h"
#include "rdcn/emulated_graph.h"
#include "rdcn/error.h"
#include "rdcn/oracle.h"
#include "rdcn/schedule_io.h"
#include "rdcn/sim.h"
#include "rdcn/topology.h"
#include "rdcn/workload.h"

namespace rdcn {
namespace {

using ojson = nlohmann::ordered_json;

double BitsToMB(double bits) { return bits / kMegabyteBits; }

ojson Opt(const std::optional<int>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson ReportJson(const DesignReport& r) {
  ojson j;
  j["format"] = 1;
  j["degree"] = r.degree;
  j["period"] = r.period;
  j["theta"] = r.theta;
  j["arl_hops"] = r.arl;
  j["ard_us"] = SecondsToMicros(r.ard_s);
  j["max_delay_us"] = SecondsToMicros(r.max_delay_s);
  j["per_node_buffer_mb"] = BitsToMB(r.per_node_buffer_bits);
  j["total_buffer_mb"] = BitsToMB(r.total_buffer_bits);
  j["static_design"] = r.static_design;
  j["degree_from_buffer"] = Opt(r.degree_from_buffer);
  j["degree_from_latency"] = Opt(r.degree_from_latency);
  return j;
}

void Emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    WriteTextFile(path, text);
  }
}

std::string Dump(const ojson& j) { return j.dump(2) + "\n"; }

struct Fabric {
  int nt = 16;
  int nu = 2;
  double delta_us = 100;
  double delta_r_us = 10;
  double cap_gbps = 400;
};

// design takes every fabric flag explicitly; gen-schedule defaults to the
// 16-ToR reference fabric.
void AddFabricFlags(CLI::App* cmd, Fabric& f, bool required) {
  const std::vector<CLI::Option*> opts{
      cmd->add_option("--nt", f.nt, "number of ToRs")->check(CLI::PositiveNumber),
      cmd->add_option("--nu", f.nu, "uplinks (circuit switches) per ToR")
          ->check(CLI::PositiveNumber),
      cmd->add_option("--delta-us", f.delta_us, "timeslot length in µs")
          ->check(CLI::PositiveNumber),
      cmd->add_option("--delta-r-us", f.delta_r_us, "reconfiguration time in µs")
          ->check(CLI::NonNegativeNumber),
      cmd->add_option("--cap-gbps", f.cap_gbps, "circuit capacity in Gbps")
          ->check(CLI::PositiveNumber)};
  for (CLI::Option* o : opts) o->required(required);
}

DemandMatrix BuildDemand(const std::string& text, const SimpleGraph& g) {
  const int n = g.num_nodes();
  const std::vector<double> caps = NodeCapacities(g);
  if (text == "all-to-all") return DemandMatrix::AllToAll(caps);
  auto suffix = [&](const std::string& prefix) -> std::optional<long long> {
    if (text.rfind(prefix, 0) != 0) return std::nullopt;
    try {
      size_t used = 0;
      const long long v = std::stoll(text.substr(prefix.size()), &used);
      if (used == text.size() - prefix.size()) return v;
    } catch (const std::exception&) {
    }
    Fail("config", "malformed demand '" + text + "'");
  };
  if (auto k = suffix("shift:")) {
    if (*k <= 0 || *k >= n) Fail("config", "shift must be in [1, nt)");
    return DemandMatrix::Permutation(Matching::Shift(n, static_cast<int>(*k)).permutation(), caps);
  }
  if (auto seed = suffix("permutation:")) {
    return DemandMatrix::Permutation(RandomDerangement(n, static_cast<uint64_t>(*seed)), caps);
  }
  Fail("config", "demand must be all-to-all, shift:K, permutation:SEED or worst");
}

SimpleGraph CompleteGraph(int n) {
  SimpleGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) g.AddCapacity(Edge{u, v}, 1.0);
    }
  }
  return g;
}

ojson OracleJson(const OracleResult& r, const SimpleGraph& g, const DemandMatrix& m,
                 bool witness) {
  double capacity = 0;
  for (const auto& [e, c] : g.edges()) {
    if (!e.self_loop()) capacity += c;
  }
  ojson j;
  j["format"] = 1;
  j["theta"] = r.theta;
  j["arl_hops"] = r.arl;
  j["upper_bound"] =
      r.arl > 0 ? ojson(ThroughputUpperBound(capacity, m.Total(), r.arl)) : ojson(nullptr);
  j["hop_cap"] = r.hop_cap;
  j["num_paths"] = r.num_paths;
  j["num_rows"] = r.num_rows;
  j["iterations"] = r.iterations;
  if (witness) {
    ojson paths = ojson::array();
    for (const PathFlow& p : r.static_witness) {
      paths.push_back(ojson{{"nodes", p.nodes}, {"rate", p.rate}});
    }
    for (const auto& [p, rate] : r.temporal_witness) {
      ojson hops = ojson::array();
      for (const Hop& h : p.hops) hops.push_back({h.edge.src, h.edge.dst, h.time});
      paths.push_back(ojson{{"hops", hops}, {"rate", rate}});
    }
    j["witness"] = paths;
  }
  return j;
}

int ExitCode(ErrorClass c) {
  switch (c) {
    case ErrorClass::kValidation:
      return 2;
    case ErrorClass::kInfeasible:
      return 3;
    case ErrorClass::kBudget:
      return 4;
  }
  return 2;
}

const char* ClassName(ErrorClass c) {
  switch (c) {
    case ErrorClass::kValidation:
      return "validation";
    case ErrorClass::kInfeasible:
      return "infeasible";
    case ErrorClass::kBudget:
      return "budget";
  }
  return "validation";
}

int ReportError(const std::string& cls, const std::string& kind, const std::string& msg,
                int code) {
  ojson j{{"error", kind}, {"class", cls}, {"message", msg}, {"exit_code", code}};
  std::cerr << j.dump() << "\n";
  return code;
}

int Main(int argc, char** argv) {
  CLI::App app{"Design and evaluation tools for periodic reconfigurable datacenter networks"};
  app.require_subcommand(1);

  // design
  Fabric design_fabric;
  double buffer_mb = 0, latency_us = 0;
  uint64_t design_seed = 1;
  std::string design_out;
  auto* design = app.add_subcommand("design", "pick the degree for buffer/latency limits");
  AddFabricFlags(design, design_fabric, true);
  auto* buffer_opt = design->add_option("--buffer-mb", buffer_mb, "per-ToR buffer in MB")
                         ->check(CLI::NonNegativeNumber);
  auto* latency_opt = design->add_option("--latency-us", latency_us, "max delay in µs")
                          ->check(CLI::NonNegativeNumber);
  design->add_option("--seed", design_seed, "matching-to-switch shuffle seed");
  design->add_option("--out", design_out, "directory for design.json and schedule.json")
      ->required();

  // gen-schedule
  Fabric gen_fabric;
  std::string gen_kind = "debruijn", gen_out;
  int gen_degree = 4;
  uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen-schedule", "write a schedule JSON");
  AddFabricFlags(gen, gen_fabric, false);
  gen->add_option("--kind", gen_kind, "debruijn, complete or expander")
      ->check(CLI::IsMember({"debruijn", "complete", "expander"}));
  gen->add_option("--d", gen_degree, "degree (debruijn, expander)");
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // analyze
  std::string analyze_schedule, analyze_csv;
  auto* analyze = app.add_subcommand("analyze", "analytic metrics of a schedule");
  analyze->add_option("--schedule", analyze_schedule, "schedule JSON ('-' for stdin)")->required();
  analyze->add_option("--emulated-csv", analyze_csv, "also write the emulated graph as CSV");

  // oracle
  std::string oracle_graph, oracle_schedule, oracle_demand = "all-to-all";
  int oracle_complete = 0, oracle_hop_cap = 0, oracle_max_nodes = 16;
  int64_t oracle_budget = 2'000'000;
  bool oracle_temporal = false, oracle_witness = false;
  auto* oracle = app.add_subcommand("oracle", "exact maximum concurrent flow");
  auto* src_graph = oracle->add_option("--graph", oracle_graph, "edge list CSV");
  auto* src_sched = oracle->add_option("--schedule", oracle_schedule, "schedule JSON");
  auto* src_complete = oracle->add_option("--complete", oracle_complete,
                                          "complete digraph on N nodes, unit capacities");
  src_graph->excludes(src_sched)->excludes(src_complete);
  src_sched->excludes(src_complete);
  oracle->add_flag("--temporal", oracle_temporal, "solve over temporal paths (needs --schedule)");
  oracle->add_option("--demand", oracle_demand,
                     "all-to-all, shift:K, permutation:SEED or worst (saturated)");
  oracle->add_option("--hop-cap", oracle_hop_cap, "path length cap (default diameter+2)");
  oracle->add_option("--max-nodes", oracle_max_nodes, "refuse larger graphs");
  oracle->add_option("--path-budget", oracle_budget, "refuse larger path sets");
  oracle->add_flag("--witness", oracle_witness, "include the path flow");

  // simulate
  std::string sim_config, sim_occupancy;
  std::optional<uint64_t> sim_seed;
  auto* simulate = app.add_subcommand("simulate", "run one simulation");
  simulate->add_option("--config", sim_config, "simulation config JSON")->required();
  simulate->add_option("--seed", sim_seed, "override the config seed");
  simulate->add_option("--occupancy-csv", sim_occupancy, "write per-slot occupancy");

  // sweep
  std::string sweep_config, sweep_axis, sweep_out;
  std::vector<double> sweep_values;
  std::optional<uint64_t> sweep_seed;
  auto* sweep = app.add_subcommand("sweep", "run simulations along one axis, CSV out");
  sweep->add_option("--config", sweep_config, "simulation config JSON")->required();
  sweep->add_option("--axis", sweep_axis, "buffer (MB), load or degree")
      ->required()
      ->check(CLI::IsMember({"buffer", "load", "degree"}));
  sweep->add_option("--values", sweep_values, "comma separated values")->delimiter(',');
  sweep->add_option("--seed", sweep_seed, "override the config seed");
  sweep->add_option("--out", sweep_out, "output CSV (default stdout)");

  auto* table2 = app.add_subcommand("table2", "design tradeoff table for the 16-ToR fabric");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return ReportError("validation", "usage", e.what(), 2);
  }

  try {
    if (*design) {
      DesignInput in;
      in.nt = design_fabric.nt;
      in.nu = design_fabric.nu;
      in.timeslot_s = MicrosToSeconds(design_fabric.delta_us);
      in.reconfig_s = MicrosToSeconds(design_fabric.delta_r_us);
      in.capacity_bps = GbpsToBps(design_fabric.cap_gbps);
      in.seed = design_seed;
      if (*buffer_opt) in.buffer_bits = buffer_mb * kMegabyteBits;
      if (*latency_opt) in.latency_s = MicrosToSeconds(latency_us);
      const Design d = MakeDesign(in);
      std::filesystem::create_directories(design_out);
      const std::string report = Dump(ReportJson(d.report));
      WriteTextFile((std::filesystem::path(design_out) / "design.json").string(), report);
      WriteTextFile((std::filesystem::path(design_out) / "schedule.json").string(),
                    WriteScheduleJson(d.schedule));
      std::cout << report;
    } else if (*gen) {
      const Fabric& f = gen_fabric;
      std::vector<std::vector<Matching>> switches;
      if (gen_kind == "complete") {
        switches = CompleteGraphSchedule(f.nt, f.nu);
      } else if (gen_kind == "debruijn") {
        switches = DebruijnSchedule(f.nt, gen_degree, f.nu, gen_seed);
      } else {
        const ExpanderResult ex = RandomRegularExpander(f.nt, gen_degree, gen_seed);
        switches = AssignToSwitches(DecomposeMatchings(ex.graph), f.nu, gen_seed);
      }
      const Schedule s = MakeSchedule(f.nt, f.nu, MicrosToSeconds(f.delta_us),
                                      MicrosToSeconds(f.delta_r_us), GbpsToBps(f.cap_gbps),
                                      std::move(switches));
      Emit(WriteScheduleJson(s), gen_out);
    } else if (*analyze) {
      const Schedule s = analyze_schedule == "-"
                             ? ParseScheduleJson(std::string(
                                   std::istreambuf_iterator<char>(std::cin), {}))
                             : ReadScheduleFile(analyze_schedule);
      const PeriodicEvolvingGraph g = BuildPeriodicGraph(s);
      const SimpleGraph simple = SimpleEmulatedGraph(g);
      const Digraph multi = ScheduleDigraph(s.switches);
      int self_loops = 0;
      for (const Edge& e : multi.edges()) self_loops += e.self_loop();
      ojson j;
      j["format"] = 1;
      j["nt"] = s.num_tors;
      j["nu"] = s.uplinks;
      j["period"] = s.period();
      j["degree"] = multi.RegularDegree();
      j["self_loop_circuits"] = self_loops;
      const int diameter = simple.Diameter();
      j["diameter"] = diameter >= 0 ? ojson(diameter) : ojson(nullptr);
      j["emulated_capacity_gbps"] = BpsToGbps(simple.TotalCapacity());
      const int d = multi.RegularDegree();
      if (d >= 2 && d <= s.num_tors) {
        const DesignReport r = EvaluateDegree(d, s.num_tors, s.uplinks, s.timeslot_s,
                                              s.capacity_bps);
        ojson rep = ReportJson(r);
        for (const auto& key : {"theta", "arl_hops", "ard_us", "max_delay_us",
                                "per_node_buffer_mb", "total_buffer_mb", "static_design"}) {
          j[key] = rep[key];
        }
      } else {
        j["theta"] = nullptr;
      }
      if (!analyze_csv.empty()) WriteTextFile(analyze_csv, EmulatedGraphCsv(EmulatedGraph(g)));
      std::cout << Dump(j);
    } else if (*oracle) {
      OracleLimits limits;
      limits.max_nodes = oracle_max_nodes;
      limits.path_budget = oracle_budget;
      if (oracle_temporal) {
        if (oracle_schedule.empty()) Fail("config", "--temporal needs --schedule");
        const PeriodicEvolvingGraph g = BuildPeriodicGraph(ReadScheduleFile(oracle_schedule));
        const SimpleGraph emulated = SimpleEmulatedGraph(g);
        if (oracle_demand == "worst") Fail("config", "worst-case search is static only");
        const DemandMatrix m = BuildDemand(oracle_demand, emulated);
        OracleLimits tl{std::min(oracle_max_nodes, 6), 3, oracle_budget};
        const OracleResult r = TemporalMaxFlow(g, m, oracle_hop_cap, tl);
        std::cout << Dump(OracleJson(r, emulated, m, oracle_witness));
      } else {
        SimpleGraph g(0);
        if (!oracle_graph.empty()) {
          std::istringstream in(ReadTextFile(oracle_graph));
          g = ReadEdgeListCsv(in);
        } else if (!oracle_schedule.empty()) {
          g = SimpleEmulatedGraph(BuildPeriodicGraph(ReadScheduleFile(oracle_schedule)));
        } else if (oracle_complete > 0) {
          g = CompleteGraph(oracle_complete);
        } else {
          Fail("config", "give one of --graph, --schedule, --complete");
        }
        if (g.num_nodes() > limits.max_nodes) {
          FailBudget("oracle-too-large", fmt::format("graph has {} nodes, limit is {}",
                                                     g.num_nodes(), limits.max_nodes));
        }
        if (oracle_demand == "worst") {
          const WorstCase w = WorstCasePermutation(g, oracle_hop_cap);
          const DemandMatrix m = DemandMatrix::Permutation(w.permutation, NodeCapacities(g));
          const OracleResult r = MaxConcurrentFlow(g, m, oracle_hop_cap, limits);
          ojson j = OracleJson(r, g, m, oracle_witness);
          j["permutation"] = w.permutation;
          j["exhaustive"] = w.exhaustive;
          std::cout << Dump(j);
        } else {
          const DemandMatrix m = BuildDemand(oracle_demand, g);
          std::cout << Dump(OracleJson(MaxConcurrentFlow(g, m, oracle_hop_cap, limits), g, m,
                                       oracle_witness));
        }
      }
    } else if (*simulate || *sweep) {
      const std::string& path = *simulate ? sim_config : sweep_config;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(ReadTextFile(path));
      } catch (const nlohmann::json::exception& e) {
        Fail("parse", std::string("simulation config: ") + e.what());
      }
      SimConfig cfg =
          SimConfigFromJson(j, std::filesystem::path(path).parent_path().string());
      const auto seed = *simulate ? sim_seed : sweep_seed;
      if (seed) cfg.seed = *seed;
      if (*simulate) {
        if (!sim_occupancy.empty()) cfg.record_occupancy = true;
        const SimResult r = RunSim(cfg);
        if (!sim_occupancy.empty()) {
          WriteTextFile(sim_occupancy, OccupancyCsv(r, cfg.schedule.num_tors));
        }
        std::cout << Dump(SimResultToJson(r));
      } else {
        const SweepAxis axis = ParseSweepAxis(sweep_axis);
        std::vector<double> values = sweep_values;
        if (axis == SweepAxis::kBuffer) {
          for (double& v : values) v *= kMegabyteBits;
        }
        std::vector<SweepRow> rows = Sweep(cfg, axis, values);
        for (size_t i = 0; i < rows.size(); ++i) rows[i].value = sweep_values[i];
        Emit(SweepCsv(axis == SweepAxis::kBuffer ? "buffer_mb" : sweep_axis, rows), sweep_out);
      }
    } else if (*table2) {
      std::string out = "name,degree,theta,delay_us,buffer_mb\n";
      for (const TradeoffRow& row : TradeoffTable()) {
        out += fmt::format("{},{},{},{},{}\n", row.name, row.degree, row.theta,
                           SecondsToMicros(row.delay_s), BitsToMB(row.buffer_bits));
      }
      std::cout << out;
    }
  } catch (const Error& e) {
    return ReportError(ClassName(e.error_class()), e.kind(), e.what(),
                       ExitCode(e.error_class()));
  } catch (const std::filesystem::filesystem_error& e) {
    return ReportError("validation", "io", e.what(), 2);
  } catch (const std::exception& e) {
    return ReportError("internal", "internal", e.what(), 1);
  }
  return 0;
}

}  // namespace
}  // namespace rdcn

int main(int argc, char** argv) { return rdcn::Main(argc, argv); }
