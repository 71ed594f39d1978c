#include "rdcn/demand.h"

#include <cmath>

#include "rdcn/error.h"

namespace rdcn {

DemandMatrix::DemandMatrix(int n) : DemandMatrix(n, std::vector<double>(n, 0)) {}

DemandMatrix::DemandMatrix(int n, std::vector<double> node_capacity)
    : n_(n), rates_(static_cast<size_t>(n) * n, 0.0),
      node_capacity_(std::move(node_capacity)) {
  if (n < 1) Fail("config", "demand matrix needs at least one node");
  if (static_cast<int>(node_capacity_.size()) != n) {
    Fail("config", "node capacity vector has wrong length");
  }
}

DemandMatrix DemandMatrix::Permutation(const std::vector<NodeId>& perm,
                                       const std::vector<double>& node_capacity) {
  const int n = static_cast<int>(perm.size());
  Matching check(perm);  // validates bijectivity
  DemandMatrix m(n, node_capacity);
  for (NodeId s = 0; s < n; ++s) {
    if (perm[s] != s) m.Set(s, perm[s], node_capacity[s]);
  }
  return m;
}

DemandMatrix DemandMatrix::AllToAll(const std::vector<double>& node_capacity) {
  const int n = static_cast<int>(node_capacity.size());
  DemandMatrix m(n, node_capacity);
  if (n < 2) return m;
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId d = 0; d < n; ++d) {
      if (s != d) m.Set(s, d, node_capacity[s] / (n - 1));
    }
  }
  return m;
}

void DemandMatrix::Set(NodeId s, NodeId d, double rate) {
  if (s < 0 || s >= n_ || d < 0 || d >= n_) {
    Fail("config", "demand index out of range");
  }
  if (!(rate >= 0) || !std::isfinite(rate)) {
    Fail("config", "demand rates must be finite and nonnegative");
  }
  rates_[s * n_ + d] = rate;
}

double DemandMatrix::Total() const {
  double sum = 0;
  for (NodeId s = 0; s < n_; ++s) {
    for (NodeId d = 0; d < n_; ++d) {
      if (s != d) sum += At(s, d);
    }
  }
  return sum;
}

bool DemandMatrix::IsSaturated(double rel_tol) const {
  for (NodeId u = 0; u < n_; ++u) {
    double row = 0, col = 0;
    for (NodeId v = 0; v < n_; ++v) {
      if (v == u) continue;
      row += At(u, v);
      col += At(v, u);
    }
    const double c = node_capacity_[u];
    const double tol = rel_tol * std::max(1.0, c);
    if (std::abs(row - c) > tol || std::abs(col - c) > tol) return false;
  }
  return true;
}

std::vector<double> NodeCapacities(const SimpleGraph& g) {
  std::vector<double> caps(g.num_nodes());
  for (NodeId u = 0; u < g.num_nodes(); ++u) caps[u] = g.OutCapacity(u);
  return caps;
}

}  // namespace rdcn
