#ifndef RDCN_SIM_H_
#define RDCN_SIM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rdcn/periodic_graph.h"
#include "rdcn/temporal.h"
#include "rdcn/workload.h"

namespace rdcn {

enum class Routing { kValiant, kShortestStatic };

// Greedy realization of shortest emulated-graph paths on the schedule: from
// u towards a target, take the neighbour one hop closer whose circuit comes
// up first (ties to the lower id). Self-loops are never used.
class RouteTable {
 public:
  explicit RouteTable(const PeriodicEvolvingGraph& g);

  // -1 when the target is unreachable or equal to u.
  NodeId NextHop(NodeId u, NodeId target, int phase) const {
    return next_hop_[(static_cast<size_t>(u) * nt_ + target) * period_ + phase];
  }
  // Slots from `phase` until circuit u->v is up; -1 if it never is.
  int Wait(NodeId u, NodeId v, int phase) const;
  // Hop distance in the emulated graph, -1 if unreachable.
  int Distance(NodeId u, NodeId v) const { return dist_[u][v]; }

 private:
  int nt_, period_;
  std::vector<std::vector<int>> dist_;
  std::vector<std::vector<std::vector<int>>> labels_;
  std::vector<NodeId> next_hop_;
};

// src -> w -> dst starting at slot t, each hop at the earliest slot its
// circuit is up. w equal to src or dst gives a single stage. Throws routing
// for unreachable pairs.
TemporalPath ValiantRoute(const PeriodicEvolvingGraph& g, const RouteTable& table,
                          NodeId src, NodeId dst, NodeId w, Slot t);

inline constexpr int64_t kPacketBits = 1500 * 8;
inline constexpr double kMegabyteBits = 8e6;

struct SimConfig {
  Schedule schedule;
  std::optional<int64_t> buffer_bits;  // per ToR; nullopt = unbounded
  Routing routing = Routing::kValiant;
  DemandKind demand = DemandKind::kPermutation;
  uint64_t demand_seed = 1;        // derangement for permutation demand
  std::vector<FlowArrival> trace;  // used when demand == kTrace
  double load = 0.25;              // fraction of server capacity nu·c
  SizeDistribution sizes = SizeDistribution::WebSearch();
  int64_t duration_slots = 2000;
  uint64_t seed = 1;
  int64_t spray_bits = 64 * 1024 * 8;  // Valiant picks one intermediate per piece
  int max_active_flows = 64;           // per ToR, served in arrival order
  bool record_occupancy = false;
};

struct SimResult {
  int64_t slots = 0;
  int64_t warmup_slots = 0;

  // Totals over the whole run.
  int64_t offered_bits = 0;
  int64_t delivered_bits = 0;
  int64_t dropped_bits = 0;
  int64_t drops = 0;  // drop events
  int64_t queued_bits = 0;
  int64_t in_flight_bits = 0;
  int64_t host_backlog_bits = 0;

  // Measurement window (after warm-up), as fractions of nt·nu·c.
  double throughput = 0;
  double offered_load = 0;
  double delivered_fraction = 0;  // delivered / offered in the window
  double upper_bound = 0;         // capacity bound with shortest-path ARL

  // Peak per-ToR occupancy per slot within the window.
  int64_t occupancy_p50_bits = 0;
  int64_t occupancy_p99_bits = 0;
  int64_t occupancy_max_bits = 0;

  // Flows arriving in the window; FCTs of completed flows, split at 100 KB.
  int64_t flows = 0;
  int64_t flows_completed = 0;
  std::optional<double> fct_short_p50_s, fct_short_p99_s;
  std::optional<double> fct_long_p50_s, fct_long_p99_s;

  int64_t invariant_checks = 0;
  std::vector<int64_t> occupancy_trace;  // slot-major, nt per slot

  bool operator==(const SimResult&) const = default;
};

// Throws config for invalid settings and routing when Valiant routing meets
// a disconnected emulated graph. Conservation and the buffer ceiling are
// checked in every slot; a violation throws std::logic_error.
SimResult RunSim(const SimConfig& cfg);

enum class SweepAxis { kBuffer, kLoad, kDegree };

struct SweepRow {
  double value = 0;
  SimResult result;
};

// Buffer values are bits, load values fractions, degree values regenerate a
// deBruijn schedule on the same fabric (seeded by cfg.seed).
std::vector<SweepRow> Sweep(const SimConfig& base, SweepAxis axis,
                            const std::vector<double>& values);

SweepAxis ParseSweepAxis(const std::string& name);
std::string SweepCsv(const std::string& axis_name, const std::vector<SweepRow>& rows);
std::string OccupancyCsv(const SimResult& r, int nt);

nlohmann::ordered_json SimResultToJson(const SimResult& r);

// Keys: format, schedule | schedule_file, buffer_bits | buffer_mb |
// buffer_packets, routing, demand, demand_seed, trace_file, load, sizes
// ("websearch", "fixed:<bytes>", "cdf:<path>"), duration_slots, seed,
// spray_bytes, max_active_flows, record_occupancy. Relative paths resolve
// against base_dir. Unknown keys are rejected.
SimConfig SimConfigFromJson(const nlohmann::json& j, const std::string& base_dir = "");

}  // namespace rdcn

#endif  // RDCN_SIM_H_
