#include "rdcn/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "rdcn/error.h"
#include "rdcn/lp.h"

namespace rdcn {
namespace {

struct Commodity {
  NodeId src, dst;
  double demand;  // normalized
};

std::vector<Commodity> Commodities(const DemandMatrix& m, double scale) {
  if (m.IsZero()) {
    Fail("undefined-throughput", "demand matrix has no off-diagonal demand");
  }
  std::vector<Commodity> out;
  for (NodeId s = 0; s < m.size(); ++s) {
    for (NodeId d = 0; d < m.size(); ++d) {
      if (s != d && m.At(s, d) > 0) out.push_back({s, d, m.At(s, d) / scale});
    }
  }
  return out;
}

void SimplePaths(const SimpleGraph& g, NodeId dst, int hop_cap, int64_t budget,
                 int64_t& total, std::vector<bool>& visited,
                 std::vector<NodeId>& path,
                 std::vector<std::vector<NodeId>>& out) {
  const NodeId u = path.back();
  if (u == dst) {
    if (++total > budget) {
      FailBudget("oracle-too-large", "path enumeration exceeds the budget of " +
                                         std::to_string(budget));
    }
    out.push_back(path);
    return;
  }
  if (static_cast<int>(path.size()) - 1 >= hop_cap) return;
  for (NodeId v : g.Successors(u)) {
    if (visited[v]) continue;
    visited[v] = true;
    path.push_back(v);
    SimplePaths(g, dst, hop_cap, budget, total, visited, path, out);
    path.pop_back();
    visited[v] = false;
  }
}

// Builds and solves the packing LP
//   max θ  s.t.  Σ_{p ∋ r} a_pr x_p <= cap_r,  θ·m_k - w·Σ_{p ∈ P_k} x_p <= 0
// and returns per-path values scaled so each commodity gets exactly θ·m_k.
struct PackingResult {
  double theta = 0;
  std::vector<double> x;
  int iterations = 0;
};

PackingResult SolvePacking(const std::vector<double>& capacity,
                           const std::vector<std::vector<int>>& path_rows,
                           const std::vector<int>& path_commodity,
                           const std::vector<Commodity>& commodities,
                           double delivery_weight) {
  const int num_cap_rows = static_cast<int>(capacity.size());
  std::vector<double> rhs = capacity;
  rhs.resize(num_cap_rows + commodities.size(), 0.0);

  std::vector<LpColumn> columns;
  columns.reserve(path_rows.size() + 1);
  for (size_t p = 0; p < path_rows.size(); ++p) {
    LpColumn col;
    for (int r : path_rows[p]) col.entries.push_back({r, 1.0});
    col.entries.push_back({num_cap_rows + path_commodity[p], -delivery_weight});
    columns.push_back(std::move(col));
  }
  LpColumn theta_col;
  theta_col.cost = 1.0;
  for (size_t k = 0; k < commodities.size(); ++k) {
    theta_col.entries.push_back({num_cap_rows + static_cast<int>(k),
                                 commodities[k].demand});
  }
  columns.push_back(std::move(theta_col));

  const LpSolution sol = MaximizePacking(rhs, columns);
  PackingResult out;
  out.theta = sol.objective;
  out.iterations = sol.iterations;
  out.x.assign(sol.x.begin(), sol.x.end() - 1);

  // Trim so that each commodity receives exactly θ·m_k.
  std::vector<double> delivered(commodities.size(), 0.0);
  for (size_t p = 0; p < out.x.size(); ++p) {
    delivered[path_commodity[p]] += delivery_weight * out.x[p];
  }
  for (size_t p = 0; p < out.x.size(); ++p) {
    const double got = delivered[path_commodity[p]];
    const double want = out.theta * commodities[path_commodity[p]].demand;
    out.x[p] = got > 0 ? out.x[p] * std::min(1.0, want / got) : 0.0;
  }
  return out;
}

double RealizedArl(const std::vector<double>& x, const std::vector<int>& hops,
                   const std::vector<int>& path_commodity,
                   const std::vector<Commodity>& commodities) {
  std::vector<double> per_pair(commodities.size(), 0.0);
  for (size_t p = 0; p < x.size(); ++p) per_pair[path_commodity[p]] += x[p];
  double total_demand = 0;
  for (const Commodity& c : commodities) total_demand += c.demand;
  double arl = 0;
  for (size_t p = 0; p < x.size(); ++p) {
    const int k = path_commodity[p];
    if (per_pair[k] <= 0 || x[p] <= 0) continue;
    arl += commodities[k].demand / total_demand * (x[p] / per_pair[k]) * hops[p];
  }
  // Every path has at least one hop; only rounding can push the mean below 1.
  return arl > 0 ? std::max(arl, 1.0) : 0.0;
}

}  // namespace

int DefaultHopCap(const SimpleGraph& g) {
  const int diameter = g.Diameter();
  if (diameter < 0) return std::max(1, g.num_nodes() - 1);
  return std::max(1, std::min(diameter + 2, g.num_nodes() - 1));
}

OracleResult MaxConcurrentFlow(const SimpleGraph& g, const DemandMatrix& m,
                               int hop_cap, const OracleLimits& limits) {
  if (g.num_nodes() > limits.max_nodes) {
    FailBudget("oracle-too-large", "graph has " + std::to_string(g.num_nodes()) +
                                       " nodes, oracle limit is " +
                                       std::to_string(limits.max_nodes));
  }
  if (m.size() != g.num_nodes()) Fail("config", "demand size differs from graph");
  if (hop_cap <= 0) hop_cap = DefaultHopCap(g);

  double scale = 0;
  for (const auto& [e, cap] : g.edges()) scale = std::max(scale, cap);
  if (scale == 0) scale = 1;
  const std::vector<Commodity> commodities = Commodities(m, scale);

  std::map<Edge, int> row_of;
  std::vector<double> capacity;
  for (const auto& [e, cap] : g.edges()) {
    if (e.self_loop()) continue;
    row_of[e] = static_cast<int>(capacity.size());
    capacity.push_back(cap / scale);
  }

  std::vector<std::vector<NodeId>> paths;
  std::vector<int> path_commodity;
  int64_t total = 0;
  std::vector<bool> visited(g.num_nodes(), false);
  for (size_t k = 0; k < commodities.size(); ++k) {
    std::vector<std::vector<NodeId>> found;
    std::vector<NodeId> path{commodities[k].src};
    visited[commodities[k].src] = true;
    SimplePaths(g, commodities[k].dst, hop_cap, limits.path_budget, total,
                visited, path, found);
    visited[commodities[k].src] = false;
    for (auto& p : found) {
      paths.push_back(std::move(p));
      path_commodity.push_back(static_cast<int>(k));
    }
  }
  std::vector<std::vector<int>> path_rows(paths.size());
  std::vector<int> hops(paths.size());
  for (size_t p = 0; p < paths.size(); ++p) {
    for (size_t i = 0; i + 1 < paths[p].size(); ++i) {
      path_rows[p].push_back(row_of.at(Edge{paths[p][i], paths[p][i + 1]}));
    }
    hops[p] = static_cast<int>(paths[p].size()) - 1;
  }

  const PackingResult lp =
      SolvePacking(capacity, path_rows, path_commodity, commodities, 1.0);
  OracleResult out;
  out.theta = lp.theta;
  out.hop_cap = hop_cap;
  out.num_paths = static_cast<int64_t>(paths.size());
  out.num_rows = static_cast<int>(capacity.size() + commodities.size());
  out.iterations = lp.iterations;
  out.arl = RealizedArl(lp.x, hops, path_commodity, commodities);
  for (size_t p = 0; p < paths.size(); ++p) {
    if (lp.x[p] > 0) out.static_witness.push_back(PathFlow{paths[p], lp.x[p] * scale});
  }
  return out;
}

OracleResult TemporalMaxFlow(const PeriodicEvolvingGraph& g,
                             const DemandMatrix& m, int hop_cap,
                             const OracleLimits& limits) {
  if (g.num_tors() > limits.max_nodes ||
      (limits.max_period > 0 && g.period() > limits.max_period)) {
    FailBudget("oracle-too-large",
               "temporal oracle is limited to nt <= " +
                   std::to_string(limits.max_nodes) + " and period <= " +
                   std::to_string(limits.max_period));
  }
  if (m.size() != g.num_tors()) Fail("config", "demand size differs from graph");
  if (hop_cap <= 0) hop_cap = DefaultHopCap(SimpleEmulatedGraph(g));

  double scale = 0;
  for (int t = 0; t < g.period(); ++t) {
    for (const auto& [e, cap] : g.EdgesAt(t)) scale = std::max(scale, cap);
  }
  if (scale == 0) scale = 1;
  const std::vector<Commodity> commodities = Commodities(m, scale);
  std::map<PairKey, int> commodity_of;
  for (size_t k = 0; k < commodities.size(); ++k) {
    commodity_of[{commodities[k].src, commodities[k].dst}] = static_cast<int>(k);
  }

  std::map<std::pair<Edge, int>, int> row_of;
  std::vector<double> capacity;
  for (int t = 0; t < g.period(); ++t) {
    for (const auto& [e, cap] : g.EdgesAt(t)) {
      if (e.self_loop()) continue;
      row_of[{e, t}] = static_cast<int>(capacity.size());
      capacity.push_back(cap / scale);
    }
  }

  std::vector<TemporalPath> paths;
  std::vector<int> path_commodity;
  for (TemporalPath& p :
       EnumerateFoundationSet(g, hop_cap, limits.path_budget)) {
    auto it = commodity_of.find({p.source(), p.destination()});
    if (it == commodity_of.end()) continue;
    path_commodity.push_back(it->second);
    paths.push_back(std::move(p));
  }
  std::vector<std::vector<int>> path_rows(paths.size());
  std::vector<int> hops(paths.size());
  for (size_t p = 0; p < paths.size(); ++p) {
    for (const Hop& h : paths[p].hops) {
      path_rows[p].push_back(row_of.at({h.edge, g.Label(h.time)}));
    }
    hops[p] = paths[p].length();
  }

  const double weight = (1.0 - g.reconfig_fraction()) / g.period();
  const PackingResult lp =
      SolvePacking(capacity, path_rows, path_commodity, commodities, weight);
  OracleResult out;
  out.theta = lp.theta;
  out.hop_cap = hop_cap;
  out.num_paths = static_cast<int64_t>(paths.size());
  out.num_rows = static_cast<int>(capacity.size() + commodities.size());
  out.iterations = lp.iterations;
  out.arl = RealizedArl(lp.x, hops, path_commodity, commodities);
  for (size_t p = 0; p < paths.size(); ++p) {
    if (lp.x[p] > 0) out.temporal_witness[paths[p]] = lp.x[p] * scale;
  }
  return out;
}

std::vector<std::string> ValidatePathFlow(const SimpleGraph& g,
                                          const std::vector<PathFlow>& flow) {
  std::vector<std::string> problems;
  double scale = 0;
  for (const auto& [e, cap] : g.edges()) scale = std::max(scale, cap);
  const double tol = 1e-9 * std::max(1.0, scale);
  std::map<Edge, double> load;
  for (size_t i = 0; i < flow.size(); ++i) {
    const auto& nodes = flow[i].nodes;
    std::vector<NodeId> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    if (nodes.size() < 2 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      problems.push_back("path " + std::to_string(i) + " is not a simple path");
      continue;
    }
    if (!(flow[i].rate >= 0)) problems.push_back("path " + std::to_string(i) + " has negative rate");
    for (size_t h = 0; h + 1 < nodes.size(); ++h) {
      const Edge e{nodes[h], nodes[h + 1]};
      if (g.Capacity(e) == 0) {
        problems.push_back("path " + std::to_string(i) + " uses missing edge " + ToString(e));
      }
      load[e] += flow[i].rate;
    }
  }
  for (const auto& [e, l] : load) {
    if (l > g.Capacity(e) + tol) {
      problems.push_back("edge " + ToString(e) + " overloaded: " + std::to_string(l) +
                         " > " + std::to_string(g.Capacity(e)));
    }
  }
  return problems;
}

double PathFlowThroughput(const std::vector<PathFlow>& flow,
                          const DemandMatrix& m) {
  if (m.IsZero()) Fail("undefined-throughput", "demand matrix is zero");
  std::map<PairKey, double> delivered;
  for (const PathFlow& p : flow) delivered[{p.nodes.front(), p.nodes.back()}] += p.rate;
  double theta = std::numeric_limits<double>::infinity();
  for (NodeId s = 0; s < m.size(); ++s) {
    for (NodeId d = 0; d < m.size(); ++d) {
      if (s == d || m.At(s, d) == 0) continue;
      auto it = delivered.find({s, d});
      theta = std::min(theta, (it == delivered.end() ? 0.0 : it->second) / m.At(s, d));
    }
  }
  return theta;
}

std::vector<NodeId> LongestMatching(const SimpleGraph& g) {
  const int n = g.num_nodes();
  if (n < 2) Fail("config", "a permutation without fixed points needs two nodes");
  // Hungarian algorithm (minimization) on cost = -distance.
  std::vector<std::vector<double>> cost(n + 1, std::vector<double>(n + 1, 0));
  const double forbid = 1e9;
  for (NodeId s = 0; s < n; ++s) {
    const auto dist = g.HopDistances(s);
    for (NodeId d = 0; d < n; ++d) {
      const double w = dist[d] < 0 ? n : dist[d];
      cost[s + 1][d + 1] = s == d ? forbid : -w;
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0][j] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<NodeId> perm(n);
  for (int j = 1; j <= n; ++j) perm[p[j] - 1] = j - 1;
  return perm;
}

WorstCase WorstCasePermutation(const SimpleGraph& g, int hop_cap,
                               int exhaustive_limit) {
  const int n = g.num_nodes();
  if (n < 2) Fail("config", "a permutation without fixed points needs two nodes");
  const std::vector<double> caps = NodeCapacities(g);
  auto evaluate = [&](const std::vector<NodeId>& perm) {
    const DemandMatrix m = DemandMatrix::Permutation(perm, caps);
    if (m.IsZero()) return std::numeric_limits<double>::infinity();
    return MaxConcurrentFlow(g, m, hop_cap).theta;
  };
  WorstCase worst;
  if (n > exhaustive_limit) {
    worst.permutation = LongestMatching(g);
    worst.theta = evaluate(worst.permutation);
    return worst;
  }
  worst.exhaustive = true;
  worst.theta = std::numeric_limits<double>::infinity();
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool derangement = true;
    for (NodeId s = 0; s < n && derangement; ++s) derangement = perm[s] != s;
    if (!derangement) continue;
    const double theta = evaluate(perm);
    if (theta < worst.theta - 1e-9) {
      worst.theta = theta;
      worst.permutation = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return worst;
}

}  // namespace rdcn
