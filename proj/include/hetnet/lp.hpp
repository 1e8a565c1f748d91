#pragma once

#include <cstddef>
#include <vector>

namespace hetnet::lp {

enum class Sense { less_equal, greater_equal, equal };

struct Row {
  std::vector<double> coef;
  Sense sense = Sense::less_equal;
  double rhs = 0.0;
};

/// minimize cost . x  subject to rows, x >= 0.
struct LinearProgram {
  std::vector<double> cost;
  std::vector<Row> rows;

  std::size_t n_vars() const { return cost.size(); }
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  std::vector<double> x;
  double objective = 0.0;
};

/// Dense two-phase tableau simplex with Bland's rule. Sized for the
/// handful-of-variables programs the oracle produces.
Solution solve(const LinearProgram& program);

}  // namespace hetnet::lp
