#ifndef RDCN_ORACLE_H_
#define RDCN_ORACLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "rdcn/demand.h"
#include "rdcn/emulated_graph.h"
#include "rdcn/periodic_graph.h"
#include "rdcn/temporal.h"

namespace rdcn {

struct PathFlow {
  std::vector<NodeId> nodes;
  double rate = 0;  // bits/s
};

struct OracleLimits {
  int max_nodes = 16;
  int max_period = 0;  // 0: no limit
  int64_t path_budget = 2'000'000;
};

struct OracleResult {
  double theta = 0;
  std::vector<PathFlow> static_witness;
  TemporalFlow temporal_witness;
  // Σ (m_sd/M) Σ_p (flow share of p within its pair)·len(p); 0 without flow.
  double arl = 0;
  int hop_cap = 0;
  int64_t num_paths = 0;
  int num_rows = 0;
  int iterations = 0;
};

// Diameter of g plus two, or n-1 when g is not strongly connected.
int DefaultHopCap(const SimpleGraph& g);

// Exact maximum concurrent flow over all simple paths of at most hop_cap hops
// (hop_cap <= 0 selects DefaultHopCap). Throws oracle-too-large when the
// graph exceeds limits.max_nodes or enumeration exceeds the path budget.
OracleResult MaxConcurrentFlow(const SimpleGraph& g, const DemandMatrix& m,
                               int hop_cap = 0, const OracleLimits& limits = {});

// Same problem stated over the foundation set of temporal paths with per
// (edge, slot) capacities. Default limits: nt <= 6, Γ <= 3.
OracleResult TemporalMaxFlow(const PeriodicEvolvingGraph& g,
                             const DemandMatrix& m, int hop_cap = 0,
                             const OracleLimits& limits = {6, 3, 2'000'000});

// Problems found in a static witness: capacity overruns (1e-9 after
// normalization) and paths that are not simple or use missing edges.
std::vector<std::string> ValidatePathFlow(const SimpleGraph& g,
                                          const std::vector<PathFlow>& flow);
// min over demanded pairs of delivered / m_sd.
double PathFlowThroughput(const std::vector<PathFlow>& flow,
                          const DemandMatrix& m);

struct WorstCase {
  std::vector<NodeId> permutation;
  double theta = 0;
  bool exhaustive = false;  // false: longest-matching heuristic
};

// Saturated permutation (no fixed points) minimizing θ. Exhaustive over all
// derangements for nt <= exhaustive_limit; otherwise the maximum-weight
// assignment on hop distances.
WorstCase WorstCasePermutation(const SimpleGraph& g, int hop_cap = 0,
                               int exhaustive_limit = 8);

// Permutation without fixed points maximizing total hop distance.
std::vector<NodeId> LongestMatching(const SimpleGraph& g);

}  // namespace rdcn

#endif  // RDCN_ORACLE_H_
