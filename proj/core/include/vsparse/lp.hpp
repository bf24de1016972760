#pragma once

#include <utility>
#include <vector>

#include "vsparse/rational.hpp"

namespace vsp {

enum class RowSense { LE, EQ, GE };

// minimize cost·x subject to rows, x >= 0.
template <class T>
struct LpProblem {
  struct Row {
    std::vector<std::pair<int, T>> coef;
    RowSense sense = RowSense::LE;
    T rhs = 0;
  };
  int num_vars = 0;
  std::vector<T> cost;
  std::vector<Row> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

template <class T>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  T objective = 0;
  std::vector<T> x;
  std::vector<T> dual;  // one per row, sign convention of min-form duality
  long pivots = 0;
};

// Dense two-phase tableau simplex. Dantzig pricing, switching to Bland's rule
// after a run of degenerate pivots.
LpSolution<Q> solve_lp_exact(const LpProblem<Q>& lp, long max_pivots = 1'000'000);
LpSolution<double> solve_lp_float(const LpProblem<double>& lp, double tol = 1e-9,
                                  long max_pivots = 1'000'000);

}  // namespace vsp
