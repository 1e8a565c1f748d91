#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>

#include "hetnet/lp.hpp"
#include "hetnet/oracle.hpp"
#include "support.hpp"

using namespace hetnet;
using hetnet::testing::pico_instance;

namespace {

// Brute-force LP reference: every choice of n tight constraints (rows or
// bounds x_j = 0) is solved by Gaussian elimination and the best feasible
// vertex kept. Only valid for bounded programs.
std::optional<double> vertex_enumeration(const lp::LinearProgram& prog) {
  const std::size_t n = prog.n_vars();
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const auto& r : prog.rows) {
    rows.push_back(r.coef);
    rhs.push_back(r.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    rows.push_back(e);
    rhs.push_back(0.0);
  }
  auto feasible = [&](const std::vector<double>& x) {
    for (double v : x) if (v < -1e-9) return false;
    for (const auto& r : prog.rows) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += r.coef[j] * x[j];
      const double tol = 1e-9 * std::max(1.0, std::abs(r.rhs));
      if (r.sense == lp::Sense::less_equal && s > r.rhs + tol) return false;
      if (r.sense == lp::Sense::greater_equal && s < r.rhs - tol) return false;
      if (r.sense == lp::Sense::equal && std::abs(s - r.rhs) > tol) return false;
    }
    return true;
  };
  std::optional<double> best;
  const std::size_t m = rows.size();
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[pick[i]][j];
        a[i][n] = rhs[pick[i]];
      }
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) < 1e-12) return;
        std::swap(a[piv], a[c]);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == c) continue;
          const double f = a[r][c] / a[c][c];
          for (std::size_t j = c; j <= n; ++j) a[r][j] -= f * a[c][j];
        }
      }
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
      if (!feasible(x)) return;
      double obj = 0.0;
      for (std::size_t j = 0; j < n; ++j) obj += prog.cost[j] * x[j];
      if (!best || obj < *best) best = obj;
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("simplex on a textbook program") {
  // min -x - y  s.t. x + 2y <= 4, 3x + y <= 6  -> optimum at (1.6, 1.2)
  lp::LinearProgram p{{-1.0, -1.0},
                      {{{1.0, 2.0}, lp::Sense::less_equal, 4.0}, {{3.0, 1.0}, lp::Sense::less_equal, 6.0}}};
  const auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.x[0] == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(s.x[1] == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(s.objective == doctest::Approx(-2.8).epsilon(1e-12));
}

TEST_CASE("simplex detects infeasible and unbounded programs") {
  lp::LinearProgram infeasible{{1.0},
                               {{{1.0}, lp::Sense::less_equal, 1.0}, {{1.0}, lp::Sense::greater_equal, 2.0}}};
  CHECK(lp::solve(infeasible).status == lp::Status::infeasible);
  lp::LinearProgram unbounded{{-1.0}, {{{1.0}, lp::Sense::greater_equal, 1.0}}};
  CHECK(lp::solve(unbounded).status == lp::Status::unbounded);
  lp::LinearProgram eq{{1.0, 1.0}, {{{1.0, 1.0}, lp::Sense::equal, 3.0}, {{1.0, -1.0}, lp::Sense::equal, 1.0}}};
  const auto s = lp::solve(eq);
  REQUIRE(s.status == lp::Status::optimal);
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.x[1] == doctest::Approx(1.0));
}

TEST_CASE("simplex matches vertex enumeration on allocation-shaped programs") {
  // Same shape as the alpha subproblem: per-station budgets, per-receiver
  // demand rows, positive costs.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int optimal = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t nb = 1 + rng() % 3;
    const std::size_t nk = 1 + rng() % 3;
    std::vector<std::pair<std::size_t, std::size_t>> vars;
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t k = 0; k < nk; ++k)
        if (u(rng) < 0.7) vars.emplace_back(b, k);
    if (vars.empty()) continue;
    lp::LinearProgram p;
    for (auto& v : vars) p.cost.push_back(1.0 + 20.0 * u(rng) * (v.first + 1));
    for (std::size_t b = 0; b < nb; ++b) {
      lp::Row r{std::vector<double>(vars.size(), 0.0), lp::Sense::less_equal, 1.0};
      for (std::size_t i = 0; i < vars.size(); ++i) if (vars[i].first == b) r.coef[i] = 1.0;
      p.rows.push_back(r);
    }
    for (std::size_t k = 0; k < nk; ++k) {
      lp::Row r{std::vector<double>(vars.size(), 0.0), lp::Sense::greater_equal, 5e6 + 4e7 * u(rng)};
      bool any = false;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].second == k) {
          r.coef[i] = 1e7 + 1.5e8 * u(rng);
          any = true;
        }
      }
      if (any) p.rows.push_back(r);
    }
    const auto s = lp::solve(p);
    const auto ref = vertex_enumeration(p);
    if (!ref) {
      CHECK(s.status == lp::Status::infeasible);
      ++infeasible;
      continue;
    }
    REQUIRE(s.status == lp::Status::optimal);
    CHECK(s.objective == doctest::Approx(*ref).epsilon(1e-9));
    ++optimal;
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 5);
}

TEST_CASE("alpha subproblem for one picocell and one receiver") {
  const auto inst = pico_instance({Point{0.0, 0.0}}, {Point{0.05, 0.0}}, 12);
  Matrix<std::uint8_t> a(1, 1, 1);
  const auto sol = solve_alpha_subproblem(inst, a);
  REQUIRE(sol.has_value());
  const double c = capacity(hetnet::sinr(inst.gains(), inst.decoding(), std::vector<std::uint8_t>{1}, 0, 0), 1e7);
  CHECK(c == doctest::Approx(120.8e6).epsilon(1e-3));
  CHECK(sol->alpha(0, 0) == doctest::Approx(12e6 / c).epsilon(1e-12));
  CHECK(sol->alpha(0, 0) == doctest::Approx(0.0993).epsilon(1e-2));
  CHECK(sol->raw_power_w == doctest::Approx(18.0 + 15.0 * 12e6 / c).epsilon(1e-12));
  CHECK(sol->raw_power_w == doctest::Approx(19.49).epsilon(1e-3));
}

TEST_CASE("alpha subproblem edge cases") {
  Matrix<std::uint8_t> a(1, 1, 1);
  const auto zero = solve_alpha_subproblem(pico_instance({Point{}}, {Point{0.05, 0.0}}, 0), a);
  REQUIRE(zero.has_value());
  CHECK(zero->alpha(0, 0) == 0.0);
  CHECK(zero->raw_power_w == doctest::Approx(18.0));
  CHECK_FALSE(solve_alpha_subproblem(pico_instance({Point{}}, {Point{0.05, 0.0}}, 200), a).has_value());
}

TEST_CASE("oracle with zero demand switches everything off") {
  const auto inst = pico_instance({Point{}, Point{0.1, 0.0}}, {Point{0.05, 0.05}, Point{-0.05, 0.0}}, 0);
  const auto r = solve_oracle(inst);
  REQUIRE(r.status == OracleStatus::optimal);
  CHECK(*r.optimal_power_w == 0.0);
  for (auto v : r.optimal_a.data()) CHECK(v == 0);
  CHECK(r.enumerated_patterns == 16);
}

TEST_CASE("oracle picks the closer of two picocells") {
  const auto inst = pico_instance({Point{0.04, 0.0}, Point{-0.15, 0.0}}, {Point{0.0, 0.0}}, 10);
  // Enumerate the four patterns by hand.
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_mask = 99;
  for (std::size_t mask = 0; mask < 4; ++mask) {
    Matrix<std::uint8_t> a(2, 1, 0);
    a(0, 0) = mask & 1U;
    a(1, 0) = (mask >> 1) & 1U;
    const auto on = std::vector<std::uint8_t>{a(0, 0), a(1, 0)};
    const auto s = sinr_matrix(inst, on);
    bool ok = true;
    for (std::size_t b = 0; b < 2; ++b) ok = ok && (!a(b, 0) || s(b, 0) >= inst.decoding().beta_linear());
    if (!ok) continue;
    const auto sol = solve_alpha_subproblem(inst, a);
    if (sol && sol->raw_power_w < best) {
      best = sol->raw_power_w;
      best_mask = mask;
    }
  }
  CHECK(best_mask == 1);
  const auto r = solve_oracle(inst);
  REQUIRE(r.status == OracleStatus::optimal);
  CHECK(r.optimal_a(0, 0) == 1);
  CHECK(r.optimal_a(1, 0) == 0);
  CHECK(*r.optimal_power_w == doctest::Approx(best).epsilon(1e-12));
  CHECK(r.enumerated_patterns == 4);
}

TEST_CASE("mutual interference rules out dual service") {
  // Two picocells 0.356 km from the receiver: alone each clears beta by a
  // hair, together the other's power drags both below it.
  const auto inst = pico_instance({Point{0.356, 0.0}, Point{-0.356, 0.0}}, {Point{0.0, 0.0}}, 0.5);
  const auto alone = sinr_matrix(inst, {1, 0});
  const auto both = sinr_matrix(inst, {1, 1});
  const double beta = inst.decoding().beta_linear();
  REQUIRE(alone(0, 0) >= beta);
  REQUIRE(both(0, 0) < beta);
  REQUIRE(both(1, 0) < beta);
  const auto r = solve_oracle(inst);
  REQUIRE(r.status == OracleStatus::optimal);
  CHECK(r.optimal_a(0, 0) + r.optimal_a(1, 0) == 1);
  CHECK(r.admissible_patterns == 3);
}

TEST_CASE("oracle optimum is feasible under the evaluator") {
  std::mt19937_64 rng(99);
  int optimal = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = hetnet::testing::random_tiny_instance(rng, 3, 3, 40);
    const auto r = solve_oracle(inst);
    if (r.status != OracleStatus::optimal) continue;
    ++optimal;
    const auto report = evaluate(inst, r.assignment());
    CHECK(report.feasible);
    CHECK(report.raw_power_w == doctest::Approx(*r.optimal_power_w).epsilon(1e-9));
  }
  CHECK(optimal > 10);
}

TEST_CASE("oracle refuses large instances") {
  const auto inst = pico_instance({Point{0.1, 0}, Point{-0.1, 0}, Point{0, 0.1}},
                                  {Point{0.05, 0}, Point{0, 0.05}, Point{-0.05, 0}, Point{0, -0.05}, Point{0.2, 0.2}},
                                  1);
  try {
    solve_oracle(inst);
    FAIL("13+ cells accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::refused_size);
  }
}

TEST_CASE("oracle reports infeasibility") {
  const auto inst = pico_instance({Point{0.0, 0.0}}, {Point{0.05, 0.0}}, 500);
  const auto r = solve_oracle(inst);
  CHECK(r.status == OracleStatus::infeasible);
  CHECK_FALSE(r.optimal_power_w.has_value());
}
