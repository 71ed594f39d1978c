#ifndef RDCN_DEMAND_H_
#define RDCN_DEMAND_H_

#include <utility>
#include <vector>

#include "rdcn/emulated_graph.h"
#include "rdcn/periodic_graph.h"

namespace rdcn {

using PairKey = std::pair<NodeId, NodeId>;

// n×n nonnegative rates in bits/s together with per-node capacities c(u).
// Diagonal entries are kept but never count as fabric demand.
class DemandMatrix {
 public:
  explicit DemandMatrix(int n);
  DemandMatrix(int n, std::vector<double> node_capacity);

  // m_{s,π(s)} = c(s) for every s with π(s) != s.
  static DemandMatrix Permutation(const std::vector<NodeId>& perm,
                                  const std::vector<double>& node_capacity);
  // m_{s,d} = c(s)/(n-1) for all d != s.
  static DemandMatrix AllToAll(const std::vector<double>& node_capacity);

  int size() const { return n_; }
  double At(NodeId s, NodeId d) const { return rates_[s * n_ + d]; }
  void Set(NodeId s, NodeId d, double rate);
  const std::vector<double>& node_capacity() const { return node_capacity_; }

  // Σ_{s != d} m_{s,d}
  double Total() const;
  bool IsZero() const { return Total() == 0; }
  // Row and column sums (off-diagonal) equal c(u) within rel_tol.
  bool IsSaturated(double rel_tol = 1e-9) const;

 private:
  int n_;
  std::vector<double> rates_;
  std::vector<double> node_capacity_;
};

// Out-capacity of every node with self-loops excluded.
std::vector<double> NodeCapacities(const SimpleGraph& g);

}  // namespace rdcn

#endif  // RDCN_DEMAND_H_
