#ifndef RDCN_TOPOLOGY_H_
#define RDCN_TOPOLOGY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "rdcn/emulated_graph.h"
#include "rdcn/periodic_graph.h"

namespace rdcn {

// Directed multigraph stored as an edge multiset. Self-loops and parallel
// edges are allowed.
class Digraph {
 public:
  explicit Digraph(int num_nodes) : num_nodes_(num_nodes) {}

  void AddEdge(NodeId u, NodeId v);

  int num_nodes() const { return num_nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  // Edge multiset in canonical (sorted) order.
  std::vector<Edge> SortedEdges() const;
  std::vector<int> OutDegrees() const;
  std::vector<int> InDegrees() const;
  // Common in/out degree, or -1 if the graph is not regular.
  int RegularDegree() const;
  // One simple edge per pair; parallel edges add capacity.
  SimpleGraph ToSimpleGraph(double capacity_per_edge) const;

 private:
  int num_nodes_;
  std::vector<Edge> edges_;
};

// v = (u·d + a) mod nt for a in [0, d). Throws degenerate-degree for d < 2
// and config for d > nt.
Digraph DebruijnDigraph(int nt, int d);

// Splits a d-regular digraph into d perfect matchings by repeated bipartite
// matching on the out/in double cover. Throws regularity otherwise.
std::vector<Matching> DecomposeMatchings(const Digraph& g);

// Seeded shuffle, then switch s receives matchings [s·Γ, (s+1)·Γ) with
// Γ = d/nu. Throws divisibility (naming the nearest valid degrees) if nu ∤ d.
std::vector<std::vector<Matching>> AssignToSwitches(
    const std::vector<Matching>& matchings, int nu, uint64_t seed);

// The nt cyclic shifts (shift 0 is the self-loop matching). Shift k goes to
// switch k mod nu at slot k / nu.
std::vector<std::vector<Matching>> CompleteGraphSchedule(int nt, int nu);

// Union of a schedule's matchings as an edge multiset.
Digraph ScheduleDigraph(const std::vector<std::vector<Matching>>& switches);

Schedule MakeSchedule(int nt, int nu, double timeslot_s, double reconfig_s,
                      double capacity_bps,
                      std::vector<std::vector<Matching>> switches);

// deBruijn → matchings → switches in one call.
std::vector<std::vector<Matching>> DebruijnSchedule(int nt, int d, int nu,
                                                    uint64_t seed);

struct ExpanderResult {
  Digraph graph;       // both directions of every undirected edge
  double lambda2 = 0;  // largest |eigenvalue| other than d
  int attempts = 0;
};

// Random simple undirected d-regular graph (pairing model with incremental
// rejection), regenerated until λ₂ <= 2·sqrt(d-1). Throws spectral-failure
// with the best λ₂ seen once max_attempts graphs were rejected. Needs
// 3 <= d < nt.
ExpanderResult RandomRegularExpander(int nt, int d, uint64_t seed,
                                     int max_attempts = 200);

// Largest absolute adjacency eigenvalue other than the trivial d of a
// d-regular symmetric digraph.
double SecondEigenvalue(const Digraph& symmetric);

}  // namespace rdcn

#endif  // RDCN_TOPOLOGY_H_
