#include "rdcn/lp.h"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace rdcn {
namespace {

constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr int kRefactorEvery = 64;
constexpr int kDegenerateRunBeforeBland = 50;

}  // namespace

LpSolution MaximizePacking(const std::vector<double>& rhs,
                           const std::vector<LpColumn>& columns,
                           int max_iterations) {
  const int m = static_cast<int>(rhs.size());
  const int n = static_cast<int>(columns.size());
  for (double b : rhs) {
    if (!(b >= 0)) throw std::invalid_argument("packing LP needs b >= 0");
  }

  // Variable j < n is a column, n + i is the slack of row i.
  auto cost = [&](int j) { return j < n ? columns[j].cost : 0.0; };
  std::vector<int> basis(m);
  std::vector<int> position(n + m, -1);  // row in basis, or -1
  for (int i = 0; i < m; ++i) {
    basis[i] = n + i;
    position[n + i] = i;
  }
  Eigen::MatrixXd binv = Eigen::MatrixXd::Identity(m, m);
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), m);
  Eigen::VectorXd xb = b;
  Eigen::VectorXd y(m), u(m);

  auto refactor = [&] {
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      const int j = basis[i];
      if (j >= n) {
        basis_matrix(j - n, i) = 1.0;
      } else {
        for (const auto& [row, a] : columns[j].entries) basis_matrix(row, i) = a;
      }
    }
    binv = basis_matrix.partialPivLu().inverse();
    xb = binv * b;
    for (int i = 0; i < m; ++i) {
      if (xb(i) < 0 && xb(i) > -1e-11) xb(i) = 0;
    }
  };

  LpSolution sol;
  int degenerate_run = 0;
  for (int iter = 0;; ++iter) {
    if (iter >= max_iterations) throw std::runtime_error("simplex iteration limit");
    if (iter > 0 && iter % kRefactorEvery == 0) refactor();

    // y = c_B^T B^{-1}
    y.setZero();
    for (int i = 0; i < m; ++i) {
      const double c = cost(basis[i]);
      if (c != 0) y += c * binv.row(i).transpose();
    }

    const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
    int entering = -1;
    double best = kCostTol;
    for (int j = 0; j < n + m; ++j) {
      if (position[j] >= 0) continue;
      double reduced;
      if (j < n) {
        reduced = columns[j].cost;
        for (const auto& [row, a] : columns[j].entries) reduced -= y(row) * a;
      } else {
        reduced = -y(j - n);
      }
      if (reduced > best) {
        entering = j;
        if (bland) break;
        best = reduced;
      }
    }
    if (entering < 0) {
      sol.iterations = iter;
      break;
    }

    if (entering < n) {
      u.setZero();
      for (const auto& [row, a] : columns[entering].entries) u += a * binv.col(row);
    } else {
      u = binv.col(entering - n);
    }

    int leave = -1;
    double step = 0;
    for (int i = 0; i < m; ++i) {
      if (u(i) <= kPivotTol) continue;
      const double ratio = std::max(0.0, xb(i)) / u(i);
      if (leave < 0 || ratio < step - 1e-12 ||
          (ratio <= step + 1e-12 && basis[i] < basis[leave])) {
        leave = i;
        step = ratio;
      }
    }
    if (leave < 0) throw std::runtime_error("packing LP is unbounded");

    degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;

    xb -= step * u;
    xb(leave) = step;
    const double pivot = u(leave);
    binv.row(leave) /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i != leave && u(i) != 0) binv.row(i) -= u(i) * binv.row(leave);
    }
    position[basis[leave]] = -1;
    basis[leave] = entering;
    position[entering] = leave;
  }

  refactor();
  y.setZero();
  for (int i = 0; i < m; ++i) {
    const double c = cost(basis[i]);
    if (c != 0) y += c * binv.row(i).transpose();
  }
  sol.x.assign(n, 0.0);
  sol.objective = 0;
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) {
      sol.x[basis[i]] = std::max(0.0, xb(i));
      sol.objective += cost(basis[i]) * sol.x[basis[i]];
    }
  }
  sol.duals.assign(y.data(), y.data() + m);
  return sol;
}

}  // namespace rdcn
