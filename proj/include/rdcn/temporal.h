#ifndef RDCN_TEMPORAL_H_
#define RDCN_TEMPORAL_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rdcn/demand.h"
#include "rdcn/emulated_graph.h"
#include "rdcn/periodic_graph.h"

namespace rdcn {

struct Hop {
  Edge edge;
  Slot time = 0;
  auto operator<=>(const Hop&) const = default;
};

// Time-respecting path: consecutive hops satisfy t_i < t_{i+1} <= t_i + Γ,
// the vertex sequence is simple, and each (e_i, t_i) is a circuit of the
// graph. Legality is checked by the functions below, not on construction.
struct TemporalPath {
  std::vector<Hop> hops;

  NodeId source() const { return hops.front().edge.src; }
  NodeId destination() const { return hops.back().edge.dst; }
  int length() const { return static_cast<int>(hops.size()); }
  std::vector<NodeId> Nodes() const;

  auto operator<=>(const TemporalPath&) const = default;
};

std::string ToString(const TemporalPath& p);

// Empty string when `p` satisfies the hop-gap, contiguity and simplicity
// rules for the given period; otherwise a message naming the offending hop.
std::string PathDefect(const TemporalPath& p, int period);
// As above, and also requires every (e_i, t_i) to be present in `g`.
std::string PathDefect(const TemporalPath& p, const PeriodicEvolvingGraph& g);

// Same path shifted by whole periods so that t_1 ∈ [0, Γ).
TemporalPath FoundationRepresentative(const TemporalPath& p, int period);

// Labeled static path carrying the temporal path it came from.
struct ExtendedPath {
  std::vector<LabeledEdge> edges;
  TemporalPath id;

  // Identifiers are unique, so they order extended paths.
  bool operator<(const ExtendedPath& o) const { return id < o.id; }
  bool operator==(const ExtendedPath& o) const {
    return id == o.id && edges == o.edges;
  }
};

// ℓ_i = t_i mod Γ. Throws constraint-violation for an illegal δ.
ExtendedPath StaticOf(const TemporalPath& delta, int period);
TemporalPath TemporalOf(const ExtendedPath& p);

// Rates in bits/s. TemporalFlow keys are foundation-set paths.
using TemporalFlow = std::map<TemporalPath, double>;
using StaticFlow = std::map<ExtendedPath, double>;

struct CapacityViolation {
  Edge edge;
  int label = 0;  // slot within the period
  double load = 0;
  double capacity = 0;
};

struct PathViolation {
  TemporalPath path;
  std::string reason;
};

struct FlowReport {
  std::vector<CapacityViolation> capacity;
  std::vector<PathViolation> paths;
  bool legal() const { return capacity.empty() && paths.empty(); }
};

// Checks every path and the steady-state load of every (edge, slot): the sum
// over paths of 𝓕(δ) for each hop i with e_i = e and t_i ≡ ℓ (mod Γ).
// Capacities are compared with absolute tolerance 1e-9 after scaling the
// largest capacity to 1.
FlowReport ValidateTemporalFlow(const TemporalFlow& flow,
                                const PeriodicEvolvingGraph& g);

// Per labeled edge capacity on the emulated graph, plus identifier
// consistency. Same tolerance convention.
std::vector<CapacityViolation> ValidateStaticFlow(const StaticFlow& flow,
                                                  const EmulatedGraph& g);

// 𝓕(δ) = Γ/(1-Δu) · F(p) with δ = temporal(p). Throws capacity-violation
// or constraint-violation for an illegal input.
TemporalFlow FlowStaticToTemporal(const StaticFlow& flow,
                                  const PeriodicEvolvingGraph& g);
// F(static(δ)) = (1-Δu)/Γ · 𝓕(δ).
StaticFlow FlowTemporalToStatic(const TemporalFlow& flow,
                                const PeriodicEvolvingGraph& g);

// (t_n - t_1 + 1) + (Γ - 1), in slots. Throws invalid-path when empty.
int64_t TemporalPathDelaySlots(const TemporalPath& p, int period);
double TemporalPathDelay(const TemporalPath& p, double timeslot_s, int period);

// min over pairs with m > 0 of ((1-Δu)/Γ · Σ_{δ ∈ P⁰_sd} 𝓕(δ)) / m_sd.
// Throws undefined-throughput when M has no off-diagonal demand.
double ThroughputOfTemporalFlow(const TemporalFlow& flow,
                                const PeriodicEvolvingGraph& g,
                                const DemandMatrix& m);
// min over pairs of Σ_{p ∈ P_sd} F(p) / m_sd.
double ThroughputOfStaticFlow(const StaticFlow& flow, const DemandMatrix& m);

// All legal temporal paths with t_1 ∈ [0, Γ) and at most max_hops hops, in a
// deterministic order. Throws oracle-too-large once more than `budget` paths
// would be produced.
std::vector<TemporalPath> EnumerateFoundationSet(const PeriodicEvolvingGraph& g,
                                                 int max_hops, int64_t budget);

}  // namespace rdcn

#endif  // RDCN_TEMPORAL_H_
