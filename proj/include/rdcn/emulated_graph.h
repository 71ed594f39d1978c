#ifndef RDCN_EMULATED_GRAPH_H_
#define RDCN_EMULATED_GRAPH_H_

#include <map>
#include <vector>

#include "rdcn/periodic_graph.h"

namespace rdcn {

struct LabeledEdge {
  Edge edge;
  int label = 0;  // slot index in [0, Γ)

  auto operator<=>(const LabeledEdge&) const = default;
};

// Labeled multigraph: one edge per (e, ℓ) with e ∈ E_ℓ, capacity
// ĉ(e,ℓ) = (1-Δu)/Γ · c_ℓ(e).
class EmulatedGraph {
 public:
  explicit EmulatedGraph(const PeriodicEvolvingGraph& g);

  int num_tors() const { return num_tors_; }
  int period() const { return period_; }
  double reconfig_fraction() const { return reconfig_fraction_; }
  const std::map<LabeledEdge, double>& edges() const { return edges_; }
  double Capacity(const LabeledEdge& e) const;
  double TotalCapacity() const;

 private:
  int num_tors_;
  int period_;
  double reconfig_fraction_;
  std::map<LabeledEdge, double> edges_;
};

// Weighted simple digraph. Self-loops may be stored; path enumeration and
// throughput accounting ignore them.
class SimpleGraph {
 public:
  explicit SimpleGraph(int num_nodes) : num_nodes_(num_nodes) {}

  // Adds to any capacity already present on e. Zero capacities are ignored.
  void AddCapacity(const Edge& e, double capacity);

  int num_nodes() const { return num_nodes_; }
  const std::map<Edge, double>& edges() const { return edges_; }
  double Capacity(const Edge& e) const;
  // Out-neighbours in increasing id order, self-loops excluded.
  std::vector<NodeId> Successors(NodeId u) const;
  // Sum of outgoing capacity, self-loops excluded.
  double OutCapacity(NodeId u) const;
  double InCapacity(NodeId v) const;
  // Sum of all capacities, self-loops included.
  double TotalCapacity() const;

  // Hop distances from `src` (self-loops ignored); -1 for unreachable.
  std::vector<int> HopDistances(NodeId src) const;
  // Largest finite hop distance, or -1 if some pair is unreachable.
  int Diameter() const;

  bool operator==(const SimpleGraph&) const = default;

 private:
  int num_nodes_;
  std::map<Edge, double> edges_;
};

// Labels summed away: ĉ(e) = (1-Δu)/Γ · Σ_t c_t(e).
SimpleGraph SimpleEmulatedGraph(const PeriodicEvolvingGraph& g);
SimpleGraph Collapse(const EmulatedGraph& g);

}  // namespace rdcn

#endif  // RDCN_EMULATED_GRAPH_H_
