#include "rdcn/temporal.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "rdcn/error.h"

namespace rdcn {
namespace {

double MaxCapacity(const PeriodicEvolvingGraph& g) {
  double m = 0;
  for (int t = 0; t < g.period(); ++t) {
    for (const auto& [e, cap] : g.EdgesAt(t)) m = std::max(m, cap);
  }
  return m;
}

std::string Describe(const CapacityViolation& v) {
  std::ostringstream os;
  os << "edge " << ToString(v.edge) << " at slot " << v.label << " carries "
     << v.load << " b/s, capacity " << v.capacity;
  return os.str();
}

// Appends every extension of `path` (already emitted) up to max_hops.
void Extend(const PeriodicEvolvingGraph& g, int max_hops, int64_t budget,
            std::vector<bool>& visited, TemporalPath& path,
            std::vector<TemporalPath>& out) {
  if (path.length() >= max_hops) return;
  const Hop last = path.hops.back();
  const NodeId u = last.edge.dst;
  for (Slot s = last.time + 1; s <= last.time + g.period(); ++s) {
    const auto& set = g.EdgesAt(s);
    for (auto it = set.lower_bound(Edge{u, 0});
         it != set.end() && it->first.src == u; ++it) {
      const NodeId v = it->first.dst;
      if (visited[v]) continue;
      path.hops.push_back(Hop{it->first, s});
      visited[v] = true;
      if (static_cast<int64_t>(out.size()) >= budget) {
        FailBudget("oracle-too-large",
                   "foundation set exceeds the path budget of " +
                       std::to_string(budget));
      }
      out.push_back(path);
      Extend(g, max_hops, budget, visited, path, out);
      visited[v] = false;
      path.hops.pop_back();
    }
  }
}

}  // namespace

std::vector<NodeId> TemporalPath::Nodes() const {
  std::vector<NodeId> nodes;
  if (hops.empty()) return nodes;
  nodes.push_back(hops.front().edge.src);
  for (const Hop& h : hops) nodes.push_back(h.edge.dst);
  return nodes;
}

std::string ToString(const TemporalPath& p) {
  std::ostringstream os;
  os << "<";
  for (size_t i = 0; i < p.hops.size(); ++i) {
    if (i) os << ", ";
    os << "(" << ToString(p.hops[i].edge) << " @" << p.hops[i].time << ")";
  }
  os << ">";
  return os.str();
}

std::string PathDefect(const TemporalPath& p, int period) {
  if (p.hops.empty()) return "path has no hops";
  std::set<NodeId> seen{p.hops[0].edge.src};
  for (int i = 0; i < p.length(); ++i) {
    const Hop& h = p.hops[i];
    const std::string at = "hop " + std::to_string(i) + " (" +
                           ToString(h.edge) + " @" + std::to_string(h.time) +
                           ")";
    if (h.time < 0) return at + " has a negative time";
    if (h.edge.self_loop()) return at + " is a self-loop";
    if (i > 0) {
      const Hop& prev = p.hops[i - 1];
      if (prev.edge.dst != h.edge.src) return at + " does not continue the path";
      if (h.time <= prev.time) return at + " is not later than the previous hop";
      if (h.time > prev.time + period) {
        return at + " waits more than one period after the previous hop";
      }
    }
    if (!seen.insert(h.edge.dst).second) return at + " revisits a node";
  }
  return "";
}

std::string PathDefect(const TemporalPath& p, const PeriodicEvolvingGraph& g) {
  std::string defect = PathDefect(p, g.period());
  if (!defect.empty()) return defect;
  for (int i = 0; i < p.length(); ++i) {
    const Hop& h = p.hops[i];
    if (h.edge.src >= g.num_tors() || h.edge.dst >= g.num_tors() ||
        !g.HasEdge(h.edge, h.time)) {
      return "hop " + std::to_string(i) + " (" + ToString(h.edge) + " @" +
             std::to_string(h.time) + ") is not a circuit at that slot";
    }
  }
  return "";
}

TemporalPath FoundationRepresentative(const TemporalPath& p, int period) {
  TemporalPath out = p;
  if (out.hops.empty()) return out;
  const Slot shift = (out.hops[0].time / period) * period;
  for (Hop& h : out.hops) h.time -= shift;
  return out;
}

ExtendedPath StaticOf(const TemporalPath& delta, int period) {
  const std::string defect = PathDefect(delta, period);
  if (!defect.empty()) Fail("constraint-violation", defect);
  ExtendedPath p;
  p.id = delta;
  for (const Hop& h : delta.hops) {
    p.edges.push_back(LabeledEdge{h.edge, static_cast<int>(h.time % period)});
  }
  return p;
}

TemporalPath TemporalOf(const ExtendedPath& p) { return p.id; }

FlowReport ValidateTemporalFlow(const TemporalFlow& flow,
                                const PeriodicEvolvingGraph& g) {
  FlowReport report;
  const double tol = 1e-9 * std::max(1.0, MaxCapacity(g));
  std::map<std::pair<Edge, int>, double> load;
  for (const auto& [path, rate] : flow) {
    std::string defect = PathDefect(path, g);
    if (defect.empty() && path.hops[0].time >= g.period()) {
      defect = "path starts outside the first period";
    }
    if (defect.empty() && !(rate >= 0)) defect = "negative rate";
    if (!defect.empty()) {
      report.paths.push_back(PathViolation{path, defect});
      continue;
    }
    for (const Hop& h : path.hops) load[{h.edge, g.Label(h.time)}] += rate;
  }
  for (const auto& [key, l] : load) {
    const double cap = g.Capacity(key.first, key.second);
    if (l > cap + tol) {
      report.capacity.push_back(CapacityViolation{key.first, key.second, l, cap});
    }
  }
  return report;
}

std::vector<CapacityViolation> ValidateStaticFlow(const StaticFlow& flow,
                                                  const EmulatedGraph& g) {
  double max_cap = 0;
  for (const auto& [e, cap] : g.edges()) max_cap = std::max(max_cap, cap);
  const double tol = 1e-9 * std::max(1.0, max_cap);
  std::map<LabeledEdge, double> load;
  for (const auto& [p, rate] : flow) {
    if (StaticOf(p.id, g.period()).edges != p.edges) {
      Fail("constraint-violation",
           "extended path labels disagree with identifier " + ToString(p.id));
    }
    if (!(rate >= 0)) Fail("constraint-violation", "negative rate on a path");
    for (const LabeledEdge& le : p.edges) load[le] += rate;
  }
  std::vector<CapacityViolation> out;
  for (const auto& [le, l] : load) {
    const double cap = g.Capacity(le);
    if (l > cap + tol) out.push_back(CapacityViolation{le.edge, le.label, l, cap});
  }
  return out;
}

TemporalFlow FlowStaticToTemporal(const StaticFlow& flow,
                                  const PeriodicEvolvingGraph& g) {
  const EmulatedGraph eg(g);
  for (const auto& [p, rate] : flow) {
    const std::string defect = PathDefect(p.id, g);
    if (!defect.empty()) Fail("constraint-violation", defect);
  }
  const auto violations = ValidateStaticFlow(flow, eg);
  if (!violations.empty()) {
    Fail("capacity-violation", Describe(violations.front()));
  }
  const double scale = g.period() / (1.0 - g.reconfig_fraction());
  TemporalFlow out;
  for (const auto& [p, rate] : flow) {
    out[FoundationRepresentative(p.id, g.period())] += scale * rate;
  }
  return out;
}

StaticFlow FlowTemporalToStatic(const TemporalFlow& flow,
                                const PeriodicEvolvingGraph& g) {
  const FlowReport report = ValidateTemporalFlow(flow, g);
  if (!report.paths.empty()) {
    Fail("constraint-violation", ToString(report.paths.front().path) + ": " +
                                     report.paths.front().reason);
  }
  if (!report.capacity.empty()) {
    Fail("capacity-violation", Describe(report.capacity.front()));
  }
  const double scale = (1.0 - g.reconfig_fraction()) / g.period();
  StaticFlow out;
  for (const auto& [delta, rate] : flow) {
    out[StaticOf(delta, g.period())] += scale * rate;
  }
  return out;
}

int64_t TemporalPathDelaySlots(const TemporalPath& p, int period) {
  if (p.hops.empty()) Fail("invalid-path", "delay of an empty path");
  return (p.hops.back().time - p.hops.front().time + 1) + (period - 1);
}

double TemporalPathDelay(const TemporalPath& p, double timeslot_s, int period) {
  return static_cast<double>(TemporalPathDelaySlots(p, period)) * timeslot_s;
}

namespace {

double MinRatio(const std::map<std::pair<NodeId, NodeId>, double>& delivered,
                const DemandMatrix& m) {
  if (m.IsZero()) {
    Fail("undefined-throughput", "demand matrix has no off-diagonal demand");
  }
  double theta = INFINITY;
  for (NodeId s = 0; s < m.size(); ++s) {
    for (NodeId d = 0; d < m.size(); ++d) {
      if (s == d || m.At(s, d) == 0) continue;
      auto it = delivered.find({s, d});
      const double got = it == delivered.end() ? 0.0 : it->second;
      theta = std::min(theta, got / m.At(s, d));
    }
  }
  return theta;
}

}  // namespace

double ThroughputOfTemporalFlow(const TemporalFlow& flow,
                                const PeriodicEvolvingGraph& g,
                                const DemandMatrix& m) {
  const double scale = (1.0 - g.reconfig_fraction()) / g.period();
  std::map<std::pair<NodeId, NodeId>, double> delivered;
  for (const auto& [delta, rate] : flow) {
    delivered[{delta.source(), delta.destination()}] += rate;
  }
  for (auto& [pair, total] : delivered) total *= scale;
  return MinRatio(delivered, m);
}

double ThroughputOfStaticFlow(const StaticFlow& flow, const DemandMatrix& m) {
  std::map<std::pair<NodeId, NodeId>, double> delivered;
  for (const auto& [p, rate] : flow) {
    delivered[{p.id.source(), p.id.destination()}] += rate;
  }
  return MinRatio(delivered, m);
}

std::vector<TemporalPath> EnumerateFoundationSet(const PeriodicEvolvingGraph& g,
                                                 int max_hops, int64_t budget) {
  std::vector<TemporalPath> out;
  if (max_hops < 1) return out;
  std::vector<bool> visited(g.num_tors(), false);
  for (Slot t = 0; t < g.period(); ++t) {
    for (const auto& [e, cap] : g.EdgesAt(t)) {
      if (e.self_loop()) continue;
      if (static_cast<int64_t>(out.size()) >= budget) {
        FailBudget("oracle-too-large",
                   "foundation set exceeds the path budget of " +
                       std::to_string(budget));
      }
      TemporalPath path{{Hop{e, t}}};
      out.push_back(path);
      visited[e.src] = visited[e.dst] = true;
      Extend(g, max_hops, budget, visited, path, out);
      visited[e.src] = visited[e.dst] = false;
    }
  }
  return out;
}

}  // namespace rdcn
