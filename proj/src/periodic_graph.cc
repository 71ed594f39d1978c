#include "rdcn/periodic_graph.h"

#include <cmath>
#include <sstream>

#include "rdcn/error.h"

namespace rdcn {

std::string ToString(const Edge& e) {
  return std::to_string(e.src) + "->" + std::to_string(e.dst);
}

Matching::Matching(std::vector<NodeId> permutation)
    : permutation_(std::move(permutation)) {
  const int n = size();
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    const NodeId out = permutation_[i];
    if (out < 0 || out >= n) {
      Fail("invalid-matching", "port " + std::to_string(i) + " maps to " +
                                   std::to_string(out) + ", outside [0," +
                                   std::to_string(n) + ")");
    }
    if (seen[out]) {
      Fail("invalid-matching",
           "output port " + std::to_string(out) + " is used twice");
    }
    seen[out] = true;
  }
}

Matching Matching::Identity(int n) { return Shift(n, 0); }

Matching Matching::Shift(int n, int k) {
  std::vector<NodeId> p(n);
  for (int i = 0; i < n; ++i) p[i] = ((i + k) % n + n) % n;
  return Matching(std::move(p));
}

PeriodicEvolvingGraph::PeriodicEvolvingGraph(int num_tors, int uplinks,
                                             double timeslot_s,
                                             double reconfig_fraction,
                                             std::vector<EdgeSet> edge_sets)
    : num_tors_(num_tors),
      uplinks_(uplinks),
      timeslot_s_(timeslot_s),
      reconfig_fraction_(reconfig_fraction),
      edge_sets_(std::move(edge_sets)) {
  if (num_tors_ < 1) Fail("config", "need at least one ToR");
  if (uplinks_ < 1) Fail("config", "need at least one uplink per ToR");
  if (edge_sets_.empty()) Fail("config", "period must be at least 1");
  if (!(timeslot_s_ > 0)) Fail("config", "timeslot must be positive");
  if (!(reconfig_fraction_ >= 0 && reconfig_fraction_ < 1)) {
    Fail("config", "reconfiguration fraction must lie in [0,1)");
  }
  for (size_t t = 0; t < edge_sets_.size(); ++t) {
    EdgeSet& set = edge_sets_[t];
    std::vector<int> out(num_tors_, 0), in(num_tors_, 0);
    for (auto it = set.begin(); it != set.end();) {
      const auto& [e, cap] = *it;
      if (e.src < 0 || e.src >= num_tors_ || e.dst < 0 || e.dst >= num_tors_) {
        Fail("config", "edge " + ToString(e) + " references an unknown ToR");
      }
      if (!(cap >= 0) || !std::isfinite(cap)) {
        Fail("config", "edge " + ToString(e) + " has invalid capacity");
      }
      if (cap == 0) {
        it = set.erase(it);
        continue;
      }
      if (++out[e.src] > uplinks_ || ++in[e.dst] > uplinks_) {
        Fail("config", "slot " + std::to_string(t) + ": ToR degree exceeds " +
                           std::to_string(uplinks_) + " uplinks at edge " +
                           ToString(e));
      }
      ++it;
    }
  }
}

double PeriodicEvolvingGraph::Capacity(const Edge& e, Slot t) const {
  const EdgeSet& set = EdgesAt(t);
  auto it = set.find(e);
  return it == set.end() ? 0.0 : it->second;
}

Slot PeriodicEvolvingGraph::NextOccurrence(const Edge& e, Slot t) const {
  for (Slot s = t; s < t + period(); ++s) {
    if (HasEdge(e, s)) return s;
  }
  return -1;
}

double PeriodicEvolvingGraph::TotalEmulatedCapacity() const {
  double sum = 0;
  for (const EdgeSet& set : edge_sets_) {
    for (const auto& [e, cap] : set) sum += cap;
  }
  return (1.0 - reconfig_fraction_) / period() * sum;
}

void ValidateSchedule(const Schedule& s) {
  if (s.num_tors < 1) Fail("config", "nt must be at least 1");
  if (s.uplinks < 1) Fail("config", "nu must be at least 1");
  if (s.switches.empty()) Fail("config", "schedule has no switches");
  if (static_cast<int>(s.switches.size()) > s.uplinks) {
    Fail("config", std::to_string(s.switches.size()) +
                       " switches but only " + std::to_string(s.uplinks) +
                       " uplinks per ToR");
  }
  const size_t period = s.switches[0].size();
  if (period == 0) Fail("schedule-mismatch", "switch 0 has an empty schedule");
  for (size_t k = 0; k < s.switches.size(); ++k) {
    if (s.switches[k].size() != period) {
      Fail("schedule-mismatch",
           "switch " + std::to_string(k) + " has " +
               std::to_string(s.switches[k].size()) + " matchings, switch 0 has " +
               std::to_string(period));
    }
    for (const Matching& m : s.switches[k]) {
      if (m.size() != s.num_tors) {
        Fail("invalid-matching", "switch " + std::to_string(k) +
                                     " has a matching of size " +
                                     std::to_string(m.size()) + ", expected " +
                                     std::to_string(s.num_tors));
      }
    }
  }
  if (!(s.timeslot_s > 0)) Fail("config", "timeslot must be positive");
  if (!(s.reconfig_s >= 0) || !(s.reconfig_s < s.timeslot_s)) {
    Fail("config", "reconfiguration time must satisfy 0 <= Δr < Δ");
  }
  if (!(s.capacity_bps > 0)) Fail("config", "link capacity must be positive");
}

PeriodicEvolvingGraph BuildPeriodicGraph(const Schedule& s) {
  ValidateSchedule(s);
  std::vector<PeriodicEvolvingGraph::EdgeSet> sets(s.period());
  for (const auto& sw : s.switches) {
    for (int t = 0; t < s.period(); ++t) {
      for (NodeId u = 0; u < s.num_tors; ++u) {
        sets[t][Edge{u, sw[t](u)}] += s.capacity_bps;
      }
    }
  }
  return PeriodicEvolvingGraph(s.num_tors, s.uplinks, s.timeslot_s,
                               s.reconfig_s / s.timeslot_s, std::move(sets));
}

}  // namespace rdcn
