#include "rdcn/topology.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "rdcn/error.h"
#include "rdcn/rng.h"

namespace rdcn {

void Digraph::AddEdge(NodeId u, NodeId v) {
  if (u < 0 || u >= num_nodes_ || v < 0 || v >= num_nodes_) {
    Fail("config", "edge " + ToString(Edge{u, v}) + " references an unknown node");
  }
  edges_.push_back(Edge{u, v});
}

std::vector<Edge> Digraph::SortedEdges() const {
  std::vector<Edge> out = edges_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Digraph::OutDegrees() const {
  std::vector<int> deg(num_nodes_, 0);
  for (const Edge& e : edges_) ++deg[e.src];
  return deg;
}

std::vector<int> Digraph::InDegrees() const {
  std::vector<int> deg(num_nodes_, 0);
  for (const Edge& e : edges_) ++deg[e.dst];
  return deg;
}

int Digraph::RegularDegree() const {
  const auto out = OutDegrees();
  const auto in = InDegrees();
  if (num_nodes_ == 0) return -1;
  const int d = out[0];
  for (int u = 0; u < num_nodes_; ++u) {
    if (out[u] != d || in[u] != d) return -1;
  }
  return d;
}

SimpleGraph Digraph::ToSimpleGraph(double capacity_per_edge) const {
  SimpleGraph g(num_nodes_);
  for (const Edge& e : edges_) g.AddCapacity(e, capacity_per_edge);
  return g;
}

Digraph DebruijnDigraph(int nt, int d) {
  if (d < 2) {
    Fail("degenerate-degree", "deBruijn degree must be at least 2, got " +
                                  std::to_string(d));
  }
  if (d > nt) {
    Fail("config", "degree " + std::to_string(d) + " exceeds nt=" +
                       std::to_string(nt));
  }
  Digraph g(nt);
  for (NodeId u = 0; u < nt; ++u) {
    for (int a = 0; a < d; ++a) {
      g.AddEdge(u, static_cast<NodeId>((static_cast<int64_t>(u) * d + a) % nt));
    }
  }
  return g;
}

namespace {

// Kuhn's augmenting path search. count[u][v] is the remaining multiplicity.
bool Augment(NodeId u, const std::vector<std::vector<int>>& count,
             std::vector<bool>& seen, std::vector<NodeId>& match_of_right) {
  const int n = static_cast<int>(count.size());
  for (NodeId v = 0; v < n; ++v) {
    if (count[u][v] == 0 || seen[v]) continue;
    seen[v] = true;
    if (match_of_right[v] < 0 || Augment(match_of_right[v], count, seen, match_of_right)) {
      match_of_right[v] = u;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Matching> DecomposeMatchings(const Digraph& g) {
  const int d = g.RegularDegree();
  if (d < 0) Fail("regularity", "graph is not in/out regular");
  const int n = g.num_nodes();
  std::vector<std::vector<int>> count(n, std::vector<int>(n, 0));
  for (const Edge& e : g.edges()) ++count[e.src][e.dst];

  std::vector<Matching> out;
  for (int round = 0; round < d; ++round) {
    std::vector<NodeId> match_of_right(n, -1);
    for (NodeId u = 0; u < n; ++u) {
      std::vector<bool> seen(n, false);
      if (!Augment(u, count, seen, match_of_right)) {
        // Cannot happen for a regular bipartite multigraph.
        Fail("regularity", "no perfect matching in round " + std::to_string(round));
      }
    }
    std::vector<NodeId> perm(n);
    for (NodeId v = 0; v < n; ++v) {
      perm[match_of_right[v]] = v;
      --count[match_of_right[v]][v];
    }
    out.emplace_back(std::move(perm));
  }
  return out;
}

std::vector<std::vector<Matching>> AssignToSwitches(
    const std::vector<Matching>& matchings, int nu, uint64_t seed) {
  const int d = static_cast<int>(matchings.size());
  if (nu < 1) Fail("config", "need at least one switch");
  if (d == 0 || d % nu != 0) {
    const int lower = (d / nu) * nu;
    const int upper = lower + nu;
    std::string hint = lower > 0 ? std::to_string(lower) + " or " : "";
    Fail("divisibility", "nu=" + std::to_string(nu) + " does not divide d=" +
                             std::to_string(d) + "; nearest valid degrees: " +
                             hint + std::to_string(upper));
  }
  std::vector<Matching> order = matchings;
  Rng rng(seed);
  rng.Shuffle(order);
  const int period = d / nu;
  std::vector<std::vector<Matching>> switches(nu);
  for (int s = 0; s < nu; ++s) {
    switches[s].assign(order.begin() + s * period, order.begin() + (s + 1) * period);
  }
  return switches;
}

std::vector<std::vector<Matching>> CompleteGraphSchedule(int nt, int nu) {
  if (nu < 1 || nt < 1) Fail("config", "nt and nu must be positive");
  if (nt % nu != 0) {
    const int lower = (nt / nu) * nu;
    Fail("divisibility", "nu=" + std::to_string(nu) + " does not divide nt=" +
                             std::to_string(nt) + "; nearest valid sizes: " +
                             (lower > 0 ? std::to_string(lower) + " or " : "") +
                             std::to_string(lower + nu));
  }
  std::vector<std::vector<Matching>> switches(nu);
  for (int k = 0; k < nt; ++k) switches[k % nu].push_back(Matching::Shift(nt, k));
  return switches;
}

Digraph ScheduleDigraph(const std::vector<std::vector<Matching>>& switches) {
  const int n = switches.empty() || switches[0].empty() ? 0 : switches[0][0].size();
  Digraph g(n);
  for (const auto& sw : switches) {
    for (const Matching& m : sw) {
      for (NodeId u = 0; u < n; ++u) g.AddEdge(u, m(u));
    }
  }
  return g;
}

Schedule MakeSchedule(int nt, int nu, double timeslot_s, double reconfig_s,
                      double capacity_bps,
                      std::vector<std::vector<Matching>> switches) {
  Schedule s;
  s.num_tors = nt;
  s.uplinks = nu;
  s.timeslot_s = timeslot_s;
  s.reconfig_s = reconfig_s;
  s.capacity_bps = capacity_bps;
  s.switches = std::move(switches);
  ValidateSchedule(s);
  return s;
}

std::vector<std::vector<Matching>> DebruijnSchedule(int nt, int d, int nu,
                                                    uint64_t seed) {
  return AssignToSwitches(DecomposeMatchings(DebruijnDigraph(nt, d)), nu, seed);
}

double SecondEigenvalue(const Digraph& g) {
  const int n = g.num_nodes();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) a(e.src, e.dst) += 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  if (n < 2) return 0;
  return std::max(std::abs(ev(0)), std::abs(ev(n - 2)));
}

namespace {

// One attempt at a simple d-regular graph. Points are drawn in pairs, only
// pairs joining distinct non-adjacent vertices are accepted; an attempt that
// gets stuck is abandoned.
bool TryRegularGraph(int nt, int d, Rng& rng, Digraph& out) {
  std::vector<NodeId> points;
  for (NodeId u = 0; u < nt; ++u) {
    for (int k = 0; k < d; ++k) points.push_back(u);
  }
  std::set<std::pair<NodeId, NodeId>> adjacent;
  while (!points.empty()) {
    bool placed = false;
    for (int tries = 0; tries < 64 && !placed; ++tries) {
      const size_t i = rng.Below(points.size());
      const size_t j = rng.Below(points.size());
      const NodeId u = points[i], v = points[j];
      if (i == j || u == v || adjacent.count({std::min(u, v), std::max(u, v)})) {
        continue;
      }
      adjacent.insert({std::min(u, v), std::max(u, v)});
      // Remove the larger index first so the smaller stays valid.
      for (size_t k : {std::max(i, j), std::min(i, j)}) {
        points[k] = points.back();
        points.pop_back();
      }
      placed = true;
    }
    if (!placed) {
      // Check exhaustively before giving up on this attempt.
      bool any = false;
      for (size_t i = 0; i < points.size() && !any; ++i) {
        for (size_t j = i + 1; j < points.size() && !any; ++j) {
          const NodeId u = points[i], v = points[j];
          any = u != v && !adjacent.count({std::min(u, v), std::max(u, v)});
        }
      }
      if (!any) return false;
    }
  }
  out = Digraph(nt);
  for (const auto& [u, v] : adjacent) {
    out.AddEdge(u, v);
    out.AddEdge(v, u);
  }
  return true;
}

}  // namespace

ExpanderResult RandomRegularExpander(int nt, int d, uint64_t seed,
                                     int max_attempts) {
  if (d < 3 || d >= nt) {
    Fail("config", "expander degree must satisfy 3 <= d < nt");
  }
  if ((static_cast<int64_t>(nt) * d) % 2 != 0) {
    Fail("config", "nt·d must be even for an undirected regular graph");
  }
  const double bound = 2.0 * std::sqrt(d - 1.0);
  Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    Digraph g(nt);
    if (!TryRegularGraph(nt, d, rng, g)) continue;
    const double lambda2 = SecondEigenvalue(g);
    best = std::min(best, lambda2);
    if (lambda2 <= bound) return ExpanderResult{std::move(g), lambda2, attempt};
  }
  FailInfeasible("spectral-failure",
                 "no graph met lambda2 <= " + std::to_string(bound) + " in " +
                     std::to_string(max_attempts) +
                     " attempts; best lambda2 = " + std::to_string(best));
}

}  // namespace rdcn
