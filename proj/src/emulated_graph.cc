#include "rdcn/emulated_graph.h"

#include <algorithm>
#include <queue>

#include "rdcn/error.h"

namespace rdcn {

EmulatedGraph::EmulatedGraph(const PeriodicEvolvingGraph& g)
    : num_tors_(g.num_tors()),
      period_(g.period()),
      reconfig_fraction_(g.reconfig_fraction()) {
  const double scale = (1.0 - reconfig_fraction_) / period_;
  for (int t = 0; t < period_; ++t) {
    for (const auto& [e, cap] : g.EdgesAt(t)) {
      edges_[LabeledEdge{e, t}] = scale * cap;
    }
  }
}

double EmulatedGraph::Capacity(const LabeledEdge& e) const {
  auto it = edges_.find(e);
  return it == edges_.end() ? 0.0 : it->second;
}

double EmulatedGraph::TotalCapacity() const {
  double sum = 0;
  for (const auto& [e, cap] : edges_) sum += cap;
  return sum;
}

void SimpleGraph::AddCapacity(const Edge& e, double capacity) {
  if (e.src < 0 || e.src >= num_nodes_ || e.dst < 0 || e.dst >= num_nodes_) {
    Fail("config", "edge " + ToString(e) + " references an unknown node");
  }
  if (!(capacity >= 0)) {
    Fail("config", "edge " + ToString(e) + " has negative capacity");
  }
  if (capacity == 0) return;
  edges_[e] += capacity;
}

double SimpleGraph::Capacity(const Edge& e) const {
  auto it = edges_.find(e);
  return it == edges_.end() ? 0.0 : it->second;
}

std::vector<NodeId> SimpleGraph::Successors(NodeId u) const {
  std::vector<NodeId> out;
  for (auto it = edges_.lower_bound(Edge{u, 0});
       it != edges_.end() && it->first.src == u; ++it) {
    if (it->first.dst != u) out.push_back(it->first.dst);
  }
  return out;
}

double SimpleGraph::OutCapacity(NodeId u) const {
  double sum = 0;
  for (auto it = edges_.lower_bound(Edge{u, 0});
       it != edges_.end() && it->first.src == u; ++it) {
    if (it->first.dst != u) sum += it->second;
  }
  return sum;
}

double SimpleGraph::InCapacity(NodeId v) const {
  double sum = 0;
  for (const auto& [e, cap] : edges_) {
    if (e.dst == v && e.src != v) sum += cap;
  }
  return sum;
}

double SimpleGraph::TotalCapacity() const {
  double sum = 0;
  for (const auto& [e, cap] : edges_) sum += cap;
  return sum;
}

std::vector<int> SimpleGraph::HopDistances(NodeId src) const {
  std::vector<int> dist(num_nodes_, -1);
  std::queue<NodeId> frontier;
  dist[src] = 0;
  frontier.push(src);
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : Successors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

int SimpleGraph::Diameter() const {
  int diameter = 0;
  for (NodeId s = 0; s < num_nodes_; ++s) {
    for (int d : HopDistances(s)) {
      if (d < 0) return -1;
      diameter = std::max(diameter, d);
    }
  }
  return diameter;
}

SimpleGraph SimpleEmulatedGraph(const PeriodicEvolvingGraph& g) {
  return Collapse(EmulatedGraph(g));
}

SimpleGraph Collapse(const EmulatedGraph& g) {
  SimpleGraph out(g.num_tors());
  for (const auto& [le, cap] : g.edges()) out.AddCapacity(le.edge, cap);
  return out;
}

}  // namespace rdcn
