#include "rdcn/sim.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rdcn/analytics.h"
#include "rdcn/emulated_graph.h"
#include "rdcn/error.h"
#include "rdcn/rng.h"
#include "rdcn/schedule_io.h"
#include "rdcn/topology.h"

namespace rdcn {
namespace {

constexpr int64_t kShortFlowBits = 100'000 * 8;

// splitmix64 finalizer, used to derive independent streams from one seed.
uint64_t Mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Nearest-rank percentile; v is reordered.
template <typename T>
T Percentile(std::vector<T>& v, double q) {
  const size_t rank = static_cast<size_t>(std::ceil(q * v.size()));
  const size_t idx = rank == 0 ? 0 : rank - 1;
  std::nth_element(v.begin(), v.begin() + idx, v.end());
  return v[idx];
}

struct Chunk {
  int32_t flow;
  NodeId dst;
  NodeId via;  // Valiant intermediate not yet reached, or -1
  int64_t bits;
};

struct Flow {
  FlowArrival arrival;
  int64_t arrival_slot = 0;
  int64_t host_bits = 0;  // not yet handed to the ToR
  int64_t delivered = 0;
};

struct Circuit {
  NodeId src, dst;
  int64_t bits;  // per slot
};

class Simulator {
 public:
  explicit Simulator(const SimConfig& cfg);
  SimResult Run();

 private:
  // Routes c at u and appends it to the matching FIFO, merging with the tail
  // when it continues the same flow and stage. Space must already be checked.
  void Enqueue(NodeId u, const Chunk& c, int phase);
  void Check(int64_t t);

  const SimConfig& cfg_;
  PeriodicEvolvingGraph graph_;
  int nt_, period_;
  int64_t ceiling_;
  int64_t server_bits_;
  RouteTable routes_;
  std::vector<std::vector<Circuit>> circuits_;  // by phase
  std::vector<std::vector<std::deque<Chunk>>> queues_;
  std::vector<int64_t> occupancy_;
  std::vector<Flow> flows_;

  int64_t offered_ = 0, delivered_ = 0, dropped_ = 0, drops_ = 0;
  int64_t backlog_ = 0, queued_ = 0, in_flight_ = 0;
  int64_t checks_ = 0;
};

Simulator::Simulator(const SimConfig& cfg)
    : cfg_(cfg), graph_(BuildPeriodicGraph(cfg.schedule)), routes_(graph_) {
  nt_ = graph_.num_tors();
  period_ = graph_.period();
  const Schedule& s = cfg.schedule;
  if (cfg.buffer_bits && *cfg.buffer_bits < 0) Fail("config", "buffer must be >= 0");
  if (!(cfg.load >= 0 && cfg.load <= 1)) Fail("config", "load must be in [0, 1]");
  if (cfg.duration_slots < 10LL * period_) {
    Fail("config", "duration must be at least 10 periods (" +
                       std::to_string(10LL * period_) + " slots)");
  }
  if (cfg.spray_bits < 1) Fail("config", "spray unit must be positive");
  if (cfg.max_active_flows < 1) Fail("config", "max_active_flows must be positive");
  ceiling_ = cfg.buffer_bits.value_or(std::numeric_limits<int64_t>::max());
  server_bits_ = static_cast<int64_t>(
      std::floor(s.uplinks * s.capacity_bps * s.timeslot_s * (1 + 1e-12)));

  const double usable = (1.0 - graph_.reconfig_fraction()) * s.timeslot_s;
  circuits_.resize(period_);
  for (int t = 0; t < period_; ++t) {
    for (const auto& [e, cap] : graph_.EdgesAt(t)) {
      if (e.self_loop()) continue;
      circuits_[t].push_back(
          Circuit{e.src, e.dst, static_cast<int64_t>(std::floor(cap * usable * (1 + 1e-12)))});
    }
  }

  if (cfg.routing == Routing::kValiant) {
    for (NodeId u = 0; u < nt_; ++u) {
      for (NodeId v = 0; v < nt_; ++v) {
        if (routes_.Distance(u, v) < 0) {
          Fail("routing", "Valiant routing needs a strongly connected emulated "
                          "graph; " + std::to_string(v) + " is unreachable from " +
                          std::to_string(u));
        }
      }
    }
  }

  queues_.assign(nt_, std::vector<std::deque<Chunk>>(nt_));
  occupancy_.assign(nt_, 0);

  std::vector<FlowArrival> arrivals;
  const double horizon = cfg.duration_slots * s.timeslot_s;
  if (cfg.demand == DemandKind::kTrace) {
    for (const FlowArrival& f : cfg.trace) {
      if (f.src < 0 || f.src >= nt_ || f.dst < 0 || f.dst >= nt_ || f.src == f.dst) {
        Fail("config", "trace flow references an invalid pair");
      }
      if (f.time_s < horizon) arrivals.push_back(f);
    }
    std::sort(arrivals.begin(), arrivals.end());
  } else {
    const std::vector<NodeId> perm = cfg.demand == DemandKind::kPermutation
                                         ? RandomDerangement(nt_, cfg.demand_seed)
                                         : std::vector<NodeId>{};
    arrivals = GenerateWorkload(cfg.demand, cfg.load, Mix(cfg.seed), nt_,
                                s.uplinks * s.capacity_bps, cfg.sizes, horizon, perm);
  }
  for (const FlowArrival& f : arrivals) {
    if (cfg.routing == Routing::kShortestStatic && routes_.Distance(f.src, f.dst) < 0) {
      Fail("routing", "no path from " + std::to_string(f.src) + " to " +
                          std::to_string(f.dst) + " in the emulated graph");
    }
    Flow flow;
    flow.arrival = f;
    flow.arrival_slot = static_cast<int64_t>(std::floor(f.time_s / s.timeslot_s)) + 1;
    flow.host_bits = f.bits;
    flows_.push_back(flow);
  }
}

void Simulator::Enqueue(NodeId u, const Chunk& c, int phase) {
  const NodeId target = c.via >= 0 ? c.via : c.dst;
  const NodeId next = routes_.NextHop(u, target, phase);
  if (next < 0) {
    Fail("routing", "no route from " + std::to_string(u) + " to " + std::to_string(target));
  }
  auto& q = queues_[u][next];
  if (!q.empty() && q.back().flow == c.flow && q.back().via == c.via) {
    q.back().bits += c.bits;
  } else {
    q.push_back(c);
  }
  occupancy_[u] += c.bits;
  queued_ += c.bits;
}

void Simulator::Check(int64_t t) {
  for (NodeId u = 0; u < nt_; ++u) {
    if (occupancy_[u] > ceiling_ || occupancy_[u] < 0) {
      throw std::logic_error(fmt::format("slot {}: ToR {} holds {} bits, buffer is {}",
                                         t, u, occupancy_[u], ceiling_));
    }
  }
  if (offered_ != backlog_ + queued_ + in_flight_ + delivered_ + dropped_) {
    throw std::logic_error(fmt::format(
        "slot {}: offered {} != backlog {} + queued {} + in flight {} + delivered {} + dropped {}",
        t, offered_, backlog_, queued_, in_flight_, delivered_, dropped_));
  }
  ++checks_;
}

SimResult Simulator::Run() {
  const Schedule& s = cfg_.schedule;
  SimResult r;
  r.slots = cfg_.duration_slots;
  r.warmup_slots = std::min<int64_t>(5LL * period_, r.slots);
  const double window_start_s = r.warmup_slots * s.timeslot_s;

  Rng rng(Mix(cfg_.seed ^ 0x5157'4c42ULL));
  std::vector<std::deque<int>> waiting(nt_);
  std::vector<std::vector<int>> active(nt_);
  std::vector<std::pair<NodeId, Chunk>> landing, next_landing;
  std::vector<int64_t> occupancy_samples;
  std::vector<double> fct_short, fct_long;
  int64_t window_offered = 0, window_delivered = 0;
  size_t next_flow = 0;

  for (int64_t t = 0; t < r.slots; ++t) {
    const int phase = static_cast<int>(t % period_);
    const bool in_window = t >= r.warmup_slots;

    // Circuits opened in the previous slot land now.
    for (auto& [v, c] : landing) {
      in_flight_ -= c.bits;
      if (c.via == v) c.via = -1;
      if (c.via < 0 && c.dst == v) {
        Flow& f = flows_[c.flow];
        f.delivered += c.bits;
        delivered_ += c.bits;
        if (in_window) window_delivered += c.bits;
        if (f.delivered == f.arrival.bits && f.arrival.time_s >= window_start_s) {
          const double fct = t * s.timeslot_s - f.arrival.time_s;
          (f.arrival.bits < kShortFlowBits ? fct_short : fct_long).push_back(fct);
        }
        continue;
      }
      const int64_t room = ceiling_ - occupancy_[v];
      const int64_t accept = std::min(c.bits, room);
      if (accept < c.bits) {
        dropped_ += c.bits - accept;
        ++drops_;
      }
      if (accept > 0) {
        Chunk kept = c;
        kept.bits = accept;
        Enqueue(v, kept, phase);
      }
    }
    landing.clear();

    while (next_flow < flows_.size() && flows_[next_flow].arrival_slot <= t) {
      const Flow& f = flows_[next_flow];
      offered_ += f.arrival.bits;
      backlog_ += f.arrival.bits;
      if (in_window) window_offered += f.arrival.bits;
      waiting[f.arrival.src].push_back(static_cast<int>(next_flow));
      ++next_flow;
    }

    // Hosts share the server link among their active flows (water-filling),
    // limited by free buffer at the ToR.
    for (NodeId u = 0; u < nt_; ++u) {
      auto& act = active[u];
      while (static_cast<int>(act.size()) < cfg_.max_active_flows && !waiting[u].empty()) {
        act.push_back(waiting[u].front());
        waiting[u].pop_front();
      }
      if (act.empty()) continue;
      int64_t left = std::min(server_bits_, ceiling_ - occupancy_[u]);
      if (left <= 0) continue;
      std::sort(act.begin(), act.end(), [&](int a, int b) {
        return std::pair(flows_[a].host_bits, a) < std::pair(flows_[b].host_bits, b);
      });
      for (size_t i = 0; i < act.size(); ++i) {
        Flow& f = flows_[act[i]];
        const int64_t give = std::min(f.host_bits, left / static_cast<int64_t>(act.size() - i));
        if (give <= 0) continue;
        left -= give;
        f.host_bits -= give;
        backlog_ -= give;
        for (int64_t done = 0; done < give;) {
          const int64_t piece = std::min(cfg_.spray_bits, give - done);
          NodeId via = -1;
          if (cfg_.routing == Routing::kValiant) {
            const NodeId w = static_cast<NodeId>(rng.Below(nt_));
            if (w != u) via = w;
          }
          Enqueue(u, Chunk{act[i], f.arrival.dst, via, piece}, phase);
          done += piece;
        }
      }
      std::erase_if(act, [&](int id) { return flows_[id].host_bits == 0; });
    }

    Check(t);
    if (in_window) occupancy_samples.insert(occupancy_samples.end(), occupancy_.begin(), occupancy_.end());
    if (cfg_.record_occupancy) {
      r.occupancy_trace.insert(r.occupancy_trace.end(), occupancy_.begin(), occupancy_.end());
    }

    for (const Circuit& c : circuits_[phase]) {
      auto& q = queues_[c.src][c.dst];
      int64_t budget = c.bits;
      while (budget > 0 && !q.empty()) {
        Chunk& head = q.front();
        const int64_t take = std::min(budget, head.bits);
        Chunk sent = head;
        sent.bits = take;
        head.bits -= take;
        if (head.bits == 0) q.pop_front();
        budget -= take;
        occupancy_[c.src] -= take;
        queued_ -= take;
        in_flight_ += take;
        next_landing.emplace_back(c.dst, sent);
      }
    }
    std::swap(landing, next_landing);
    Check(t);
  }

  r.offered_bits = offered_;
  r.delivered_bits = delivered_;
  r.dropped_bits = dropped_;
  r.drops = drops_;
  r.queued_bits = queued_;
  r.in_flight_bits = in_flight_;
  r.host_backlog_bits = backlog_;
  r.invariant_checks = checks_;

  const double line = static_cast<double>(r.slots - r.warmup_slots) * nt_ *
                      s.uplinks * s.capacity_bps * s.timeslot_s;
  if (line > 0) {
    r.throughput = window_delivered / line;
    r.offered_load = window_offered / line;
  }
  r.delivered_fraction = window_offered > 0
                             ? static_cast<double>(window_delivered) / window_offered
                             : 0.0;

  // Capacity bound: every delivered bit crosses at least its shortest-path
  // hop count of non-self-loop emulated capacity.
  double emulated = 0;
  for (int t = 0; t < period_; ++t) {
    for (const auto& [e, cap] : graph_.EdgesAt(t)) {
      if (!e.self_loop()) emulated += cap * (1.0 - graph_.reconfig_fraction()) / period_;
    }
  }
  double weight = 0, hops = 0;
  auto add_pair = [&](NodeId a, NodeId b, double w) {
    if (routes_.Distance(a, b) < 0) return;
    weight += w;
    hops += w * routes_.Distance(a, b);
  };
  if (cfg_.demand == DemandKind::kPermutation) {
    const auto perm = RandomDerangement(nt_, cfg_.demand_seed);
    for (NodeId a = 0; a < nt_; ++a) add_pair(a, perm[a], 1.0);
  } else if (cfg_.demand == DemandKind::kAllToAll) {
    for (NodeId a = 0; a < nt_; ++a) {
      for (NodeId b = 0; b < nt_; ++b) {
        if (a != b) add_pair(a, b, 1.0);
      }
    }
  } else {
    for (const Flow& f : flows_) add_pair(f.arrival.src, f.arrival.dst, f.arrival.bits);
  }
  if (weight > 0 && hops > 0) {
    r.upper_bound = ThroughputUpperBound(emulated, nt_ * s.uplinks * s.capacity_bps,
                                         hops / weight);
    if (cfg_.demand != DemandKind::kTrace) r.upper_bound = std::min(r.upper_bound, cfg_.load);
  }

  if (!occupancy_samples.empty()) {
    r.occupancy_p50_bits = Percentile(occupancy_samples, 0.5);
    r.occupancy_p99_bits = Percentile(occupancy_samples, 0.99);
    r.occupancy_max_bits = *std::max_element(occupancy_samples.begin(), occupancy_samples.end());
  }
  for (const Flow& f : flows_) {
    if (f.arrival.time_s < window_start_s) continue;
    ++r.flows;
    if (f.delivered == f.arrival.bits) ++r.flows_completed;
  }
  if (!fct_short.empty()) {
    r.fct_short_p50_s = Percentile(fct_short, 0.5);
    r.fct_short_p99_s = Percentile(fct_short, 0.99);
  }
  if (!fct_long.empty()) {
    r.fct_long_p50_s = Percentile(fct_long, 0.5);
    r.fct_long_p99_s = Percentile(fct_long, 0.99);
  }
  return r;
}

std::string Num(double v) { return fmt::format("{}", v); }
std::string Num(const std::optional<double>& v) { return v ? Num(*v) : ""; }

std::string ResolvePath(const std::string& path, const std::string& base_dir) {
  if (base_dir.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(base_dir) / path).string();
}

}  // namespace

RouteTable::RouteTable(const PeriodicEvolvingGraph& g)
    : nt_(g.num_tors()), period_(g.period()) {
  labels_.assign(nt_, std::vector<std::vector<int>>(nt_));
  for (int t = 0; t < period_; ++t) {
    for (const auto& [e, cap] : g.EdgesAt(t)) {
      if (!e.self_loop()) labels_[e.src][e.dst].push_back(t);
    }
  }
  const SimpleGraph simple = SimpleEmulatedGraph(g);
  dist_.resize(nt_);
  for (NodeId u = 0; u < nt_; ++u) dist_[u] = simple.HopDistances(u);

  next_hop_.assign(static_cast<size_t>(nt_) * nt_ * period_, -1);
  for (NodeId u = 0; u < nt_; ++u) {
    const auto succ = simple.Successors(u);
    for (NodeId x = 0; x < nt_; ++x) {
      if (x == u || dist_[u][x] < 0) continue;
      for (int p = 0; p < period_; ++p) {
        int best_wait = period_;
        NodeId best = -1;
        for (NodeId v : succ) {
          if (dist_[v][x] != dist_[u][x] - 1) continue;
          const int wait = Wait(u, v, p);
          if (wait >= 0 && wait < best_wait) {
            best_wait = wait;
            best = v;
          }
        }
        next_hop_[(static_cast<size_t>(u) * nt_ + x) * period_ + p] = best;
      }
    }
  }
}

int RouteTable::Wait(NodeId u, NodeId v, int phase) const {
  int best = -1;
  for (int l : labels_[u][v]) {
    const int wait = (l - phase + period_) % period_;
    if (best < 0 || wait < best) best = wait;
  }
  return best;
}

TemporalPath ValiantRoute(const PeriodicEvolvingGraph& g, const RouteTable& table,
                          NodeId src, NodeId dst, NodeId w, Slot t) {
  const int n = g.num_tors();
  if (src < 0 || src >= n || dst < 0 || dst >= n || w < 0 || w >= n) {
    Fail("config", "route endpoints must be node ids");
  }
  if (src == dst) Fail("config", "route needs src != dst");
  TemporalPath path;
  NodeId at = src;
  Slot time = t;
  for (NodeId target : {w, dst}) {
    if (table.Distance(at, target) < 0) {
      Fail("routing", std::to_string(target) + " is unreachable from " + std::to_string(at));
    }
    while (at != target) {
      const int phase = static_cast<int>(time % g.period());
      const NodeId next = table.NextHop(at, target, phase);
      const Slot hop = time + table.Wait(at, next, phase);
      path.hops.push_back(Hop{Edge{at, next}, hop});
      at = next;
      time = hop + 1;
    }
  }
  return path;
}

SimResult RunSim(const SimConfig& cfg) { return Simulator(cfg).Run(); }

std::vector<SweepRow> Sweep(const SimConfig& base, SweepAxis axis,
                            const std::vector<double>& values) {
  std::vector<SweepRow> rows;
  for (double v : values) {
    SimConfig cfg = base;
    switch (axis) {
      case SweepAxis::kBuffer:
        if (!(v >= 0)) Fail("config", "buffer values must be >= 0");
        cfg.buffer_bits = std::llround(v);
        break;
      case SweepAxis::kLoad:
        cfg.load = v;
        break;
      case SweepAxis::kDegree: {
        if (v != std::floor(v)) Fail("config", "degree values must be integers");
        const Schedule& s = base.schedule;
        cfg.schedule = MakeSchedule(
            s.num_tors, s.uplinks, s.timeslot_s, s.reconfig_s, s.capacity_bps,
            DebruijnSchedule(s.num_tors, static_cast<int>(v), s.uplinks, base.seed));
        break;
      }
    }
    rows.push_back(SweepRow{v, RunSim(cfg)});
  }
  return rows;
}

SweepAxis ParseSweepAxis(const std::string& name) {
  if (name == "buffer") return SweepAxis::kBuffer;
  if (name == "load") return SweepAxis::kLoad;
  if (name == "degree") return SweepAxis::kDegree;
  Fail("config", "unknown sweep axis '" + name + "' (buffer, load, degree)");
}

std::string SweepCsv(const std::string& axis_name, const std::vector<SweepRow>& rows) {
  std::string out = axis_name +
                    ",throughput,offered_load,upper_bound,occupancy_p50_bits,"
                    "occupancy_p99_bits,fct_short_p99_s,fct_long_p99_s,"
                    "dropped_bits,drops\n";
  for (const SweepRow& row : rows) {
    const SimResult& r = row.result;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", Num(row.value),
                       Num(r.throughput), Num(r.offered_load), Num(r.upper_bound),
                       r.occupancy_p50_bits, r.occupancy_p99_bits,
                       Num(r.fct_short_p99_s), Num(r.fct_long_p99_s),
                       r.dropped_bits, r.drops);
  }
  return out;
}

std::string OccupancyCsv(const SimResult& r, int nt) {
  std::string out = "slot,tor,occupancy_bits\n";
  for (size_t i = 0; i < r.occupancy_trace.size(); ++i) {
    out += fmt::format("{},{},{}\n", i / nt, i % nt, r.occupancy_trace[i]);
  }
  return out;
}

nlohmann::ordered_json SimResultToJson(const SimResult& r) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["format"] = 1;
  j["slots"] = r.slots;
  j["warmup_slots"] = r.warmup_slots;
  j["throughput"] = r.throughput;
  j["offered_load"] = r.offered_load;
  j["delivered_fraction"] = r.delivered_fraction;
  j["upper_bound"] = r.upper_bound;
  j["offered_bits"] = r.offered_bits;
  j["delivered_bits"] = r.delivered_bits;
  j["dropped_bits"] = r.dropped_bits;
  j["drops"] = r.drops;
  j["queued_bits"] = r.queued_bits;
  j["in_flight_bits"] = r.in_flight_bits;
  j["host_backlog_bits"] = r.host_backlog_bits;
  j["occupancy_p50_bits"] = r.occupancy_p50_bits;
  j["occupancy_p99_bits"] = r.occupancy_p99_bits;
  j["occupancy_max_bits"] = r.occupancy_max_bits;
  j["flows"] = r.flows;
  j["flows_completed"] = r.flows_completed;
  j["fct_short_p50_s"] = opt(r.fct_short_p50_s);
  j["fct_short_p99_s"] = opt(r.fct_short_p99_s);
  j["fct_long_p50_s"] = opt(r.fct_long_p50_s);
  j["fct_long_p99_s"] = opt(r.fct_long_p99_s);
  j["invariant_checks"] = r.invariant_checks;
  return j;
}

SimConfig SimConfigFromJson(const nlohmann::json& j, const std::string& base_dir) {
  static const std::set<std::string> kKeys = {
      "format", "schedule", "schedule_file", "buffer_bits", "buffer_mb",
      "buffer_packets", "routing", "demand", "demand_seed", "trace_file", "load",
      "sizes", "duration_slots", "seed", "spray_bytes", "max_active_flows",
      "record_occupancy"};
  if (!j.is_object()) Fail("parse", "simulation config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) Fail("config", "unknown simulation config key '" + key + "'");
  }
  SimConfig cfg;
  try {
    if (j.value("format", 1) != 1) Fail("parse", "unsupported config format");
    if (j.contains("schedule") == j.contains("schedule_file")) {
      Fail("config", "give exactly one of schedule and schedule_file");
    }
    cfg.schedule = j.contains("schedule")
                       ? ScheduleFromJson(j.at("schedule"))
                       : ReadScheduleFile(ResolvePath(j.at("schedule_file"), base_dir));
    const int buffers = j.contains("buffer_bits") + j.contains("buffer_mb") +
                        j.contains("buffer_packets");
    if (buffers > 1) Fail("config", "give at most one buffer size");
    if (j.contains("buffer_bits")) cfg.buffer_bits = j.at("buffer_bits").get<int64_t>();
    if (j.contains("buffer_mb")) {
      cfg.buffer_bits = std::llround(j.at("buffer_mb").get<double>() * kMegabyteBits);
    }
    if (j.contains("buffer_packets")) {
      cfg.buffer_bits = j.at("buffer_packets").get<int64_t>() * kPacketBits;
    }
    const std::string routing = j.value("routing", "valiant");
    if (routing == "valiant") {
      cfg.routing = Routing::kValiant;
    } else if (routing == "shortest-static") {
      cfg.routing = Routing::kShortestStatic;
    } else {
      Fail("config", "routing must be valiant or shortest-static");
    }
    const std::string demand = j.value("demand", "permutation");
    if (demand == "permutation") {
      cfg.demand = DemandKind::kPermutation;
    } else if (demand == "all-to-all") {
      cfg.demand = DemandKind::kAllToAll;
    } else if (demand == "trace") {
      cfg.demand = DemandKind::kTrace;
      if (!j.contains("trace_file")) Fail("config", "trace demand needs trace_file");
      std::istringstream in(ReadTextFile(ResolvePath(j.at("trace_file"), base_dir)));
      cfg.trace = ReadTrace(in, cfg.schedule.num_tors);
    } else {
      Fail("config", "demand must be permutation, all-to-all or trace");
    }
    cfg.demand_seed = j.value("demand_seed", uint64_t{1});
    cfg.load = j.value("load", 0.25);
    const std::string sizes = j.value("sizes", "websearch");
    if (sizes == "websearch") {
      cfg.sizes = SizeDistribution::WebSearch();
    } else if (sizes.rfind("fixed:", 0) == 0) {
      cfg.sizes = SizeDistribution::Fixed(std::stod(sizes.substr(6)));
    } else if (sizes.rfind("cdf:", 0) == 0) {
      std::istringstream in(ReadTextFile(ResolvePath(sizes.substr(4), base_dir)));
      cfg.sizes = SizeDistribution::Parse(in);
    } else {
      Fail("config", "sizes must be websearch, fixed:<bytes> or cdf:<path>");
    }
    cfg.duration_slots = j.value("duration_slots", int64_t{2000});
    cfg.seed = j.value("seed", uint64_t{1});
    cfg.spray_bits = j.value("spray_bytes", int64_t{64 * 1024}) * 8;
    cfg.max_active_flows = j.value("max_active_flows", 64);
    cfg.record_occupancy = j.value("record_occupancy", false);
  } catch (const nlohmann::json::exception& e) {
    Fail("parse", std::string("simulation config: ") + e.what());
  } catch (const std::invalid_argument&) {
    Fail("parse", "simulation config: malformed number in sizes");
  }
  return cfg;
}

}  // namespace rdcn
