#ifndef RDCN_PERIODIC_GRAPH_H_
#define RDCN_PERIODIC_GRAPH_H_

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rdcn {

using NodeId = int;

// Absolute timeslot index. Slots are integral everywhere; seconds appear only
// when reporting.
using Slot = int64_t;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;

  bool self_loop() const { return src == dst; }
  auto operator<=>(const Edge&) const = default;
};

std::string ToString(const Edge& e);

// A bijection from switch input ports to output ports.
class Matching {
 public:
  // Throws invalid-matching if `permutation` is not a bijection on [0, n).
  explicit Matching(std::vector<NodeId> permutation);

  static Matching Identity(int n);
  // i -> (i + k) mod n
  static Matching Shift(int n, int k);

  NodeId operator()(NodeId in) const { return permutation_[in]; }
  int size() const { return static_cast<int>(permutation_.size()); }
  const std::vector<NodeId>& permutation() const { return permutation_; }

  bool operator==(const Matching&) const = default;

 private:
  std::vector<NodeId> permutation_;
};

// Raw circuit schedule: the per-switch matching sequences plus timing. This is
// the content of a schedule file.
struct Schedule {
  int num_tors = 0;
  int uplinks = 0;
  double timeslot_s = 0;
  double reconfig_s = 0;
  double capacity_bps = 0;
  std::vector<std::vector<Matching>> switches;

  // Length of the (common) switch sequence; 0 for an empty schedule.
  int period() const {
    return switches.empty() ? 0 : static_cast<int>(switches[0].size());
  }
  bool operator==(const Schedule&) const = default;
};

// Periodic sequence of circuit graphs. E_t for t >= period resolves to
// E_{t mod period}. Immutable.
class PeriodicEvolvingGraph {
 public:
  // Capacity in bits/s keyed by edge. Zero-capacity entries are dropped.
  using EdgeSet = std::map<Edge, double>;

  // Validates degree bounds (at most `uplinks` distinct out/in edges per ToR
  // per slot) and capacities.
  PeriodicEvolvingGraph(int num_tors, int uplinks, double timeslot_s,
                        double reconfig_fraction, std::vector<EdgeSet> edge_sets);

  int num_tors() const { return num_tors_; }
  int uplinks() const { return uplinks_; }
  int period() const { return static_cast<int>(edge_sets_.size()); }
  double timeslot() const { return timeslot_s_; }
  // Δu = Δr / Δ
  double reconfig_fraction() const { return reconfig_fraction_; }

  int Label(Slot t) const { return static_cast<int>(t % period()); }
  const EdgeSet& EdgesAt(Slot t) const { return edge_sets_[Label(t)]; }
  double Capacity(const Edge& e, Slot t) const;
  bool HasEdge(const Edge& e, Slot t) const { return Capacity(e, t) > 0; }

  // First slot s >= t at which e is present, or -1 if e never appears.
  Slot NextOccurrence(const Edge& e, Slot t) const;

  // (1-Δu)/Γ times the sum of all capacities over one period.
  double TotalEmulatedCapacity() const;

 private:
  int num_tors_;
  int uplinks_;
  double timeslot_s_;
  double reconfig_fraction_;
  std::vector<EdgeSet> edge_sets_;
};

// E_t is the union over switches of their matching at index t, each edge
// carrying capacity_bps. When two switches realize the same ToR pair in the
// same slot the capacities add.
PeriodicEvolvingGraph BuildPeriodicGraph(const Schedule& schedule);

// Throws schedule-mismatch / invalid-matching / config errors.
void ValidateSchedule(const Schedule& schedule);

}  // namespace rdcn

#endif  // RDCN_PERIODIC_GRAPH_H_
