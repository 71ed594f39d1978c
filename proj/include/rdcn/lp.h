#ifndef RDCN_LP_H_
#define RDCN_LP_H_

#include <utility>
#include <vector>

namespace rdcn {

struct LpColumn {
  double cost = 0;
  std::vector<std::pair<int, double>> entries;  // (row, coefficient)
};

struct LpSolution {
  double objective = 0;
  std::vector<double> x;     // one per column
  std::vector<double> duals; // one per row, >= 0 at optimality
  int iterations = 0;
};

// maximize c·x  s.t.  A x <= b, x >= 0, with b >= 0 so the slack basis is
// feasible. Revised simplex with an explicit basis inverse, Dantzig pricing,
// and Bland's rule after a run of degenerate pivots. Throws on unbounded
// problems or when the iteration limit is hit.
LpSolution MaximizePacking(const std::vector<double>& rhs,
                           const std::vector<LpColumn>& columns,
                           int max_iterations = 200000);

}  // namespace rdcn

#endif  // RDCN_LP_H_
