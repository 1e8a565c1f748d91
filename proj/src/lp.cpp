#include "hetnet/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetnet/common.hpp"

namespace hetnet::lp {

namespace {

constexpr double kEps = 1e-11;
constexpr std::size_t kMaxPivots = 100000;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c, std::vector<double>& objective) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    const double f = objective[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= cols_; ++j) objective[j] -= f * at(r, j);
      objective[c] = 0.0;
    }
    basis_[r] = c;
  }

  /// Reduced-cost row for `cost` given the current basis; last entry holds
  /// minus the objective value.
  std::vector<double> objective_row(const std::vector<double>& cost) const {
    std::vector<double> obj(cols_ + 1, 0.0);
    for (std::size_t j = 0; j < cols_; ++j) obj[j] = cost[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) obj[j] -= cb * at(i, j);
    }
    return obj;
  }

  /// Returns false when the program is unbounded.
  bool optimise(std::vector<double>& objective, std::size_t allowed_cols) {
    for (std::size_t iter = 0; iter < kMaxPivots; ++iter) {
      std::size_t enter = allowed_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (objective[j] < -kEps) {
          enter = j;
          break;
        }
      }
      if (enter == allowed_cols) return true;

      std::size_t leave = rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double coef = at(i, enter);
        if (coef <= kEps) continue;
        const double ratio = rhs(i) / coef;
        if (ratio < best_ratio - kEps ||
            (std::abs(ratio - best_ratio) <= kEps && basis_[i] < basis_[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter, objective);
    }
    throw Error(ErrorCode::invalid_argument, "simplex pivot limit exceeded");
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const LinearProgram& program) {
  const std::size_t n = program.n_vars();
  const std::size_t m = program.rows.size();

  // Normalised rows: rhs >= 0 and unit max-norm coefficients.
  std::vector<Row> rows = program.rows;
  for (auto& row : rows) {
    if (row.coef.size() != n) {
      throw Error(ErrorCode::invalid_argument, "LP row width does not match the cost vector");
    }
    double scale = 0.0;
    for (double c : row.coef) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) scale = 1.0;
    if (row.rhs < 0.0) scale = -scale;
    for (double& c : row.coef) c /= scale;
    row.rhs /= scale;
    if (scale < 0.0) {
      if (row.sense == Sense::less_equal) {
        row.sense = Sense::greater_equal;
      } else if (row.sense == Sense::greater_equal) {
        row.sense = Sense::less_equal;
      }
    }
  }

  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (const auto& row : rows) {
    if (row.sense != Sense::equal) ++n_slack;
    if (row.sense != Sense::less_equal) ++n_art;
  }
  const std::size_t art_begin = n + n_slack;
  const std::size_t cols = art_begin + n_art;

  Tableau t(m, cols);
  std::size_t slack = n;
  std::size_t art = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = rows[i];
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = row.coef[j];
    t.rhs(i) = row.rhs;
    if (row.sense == Sense::less_equal) {
      t.at(i, slack) = 1.0;
      t.basis()[i] = slack++;
    } else {
      if (row.sense == Sense::greater_equal) t.at(i, slack++) = -1.0;
      t.at(i, art) = 1.0;
      t.basis()[i] = art++;
    }
  }

  Solution out;
  if (n_art > 0) {
    std::vector<double> phase1_cost(cols, 0.0);
    for (std::size_t j = art_begin; j < cols; ++j) phase1_cost[j] = 1.0;
    auto obj = t.objective_row(phase1_cost);
    t.optimise(obj, cols);
    if (-obj[cols] > 1e-9) {
      out.status = Status::infeasible;
      return out;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] < art_begin) continue;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (std::abs(t.at(i, j)) > kEps) {
          t.pivot(i, j, obj);
          break;
        }
      }
    }
  }

  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = program.cost[j];
  // Artificials left in the basis sit on redundant rows at value 0; giving
  // them zero cost and barring them from entering keeps phase 2 exact.
  auto obj = t.objective_row(cost);
  if (!t.optimise(obj, art_begin)) {
    out.status = Status::unbounded;
    return out;
  }

  out.status = Status::optimal;
  out.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis()[i] < n) out.x[t.basis()[i]] = std::max(0.0, t.rhs(i));
  }
  out.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.objective += program.cost[j] * out.x[j];
  return out;
}

}  // namespace hetnet::lp
