#include "hetnet/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "hetnet/lp.hpp"

namespace hetnet {

std::optional<AlphaSolution> solve_alpha_subproblem(const NetworkInstance& instance,
                                                    const Matrix<std::uint8_t>& a) {
  const std::size_t nb = instance.n_stations();
  const std::size_t nk = instance.n_receivers();

  std::vector<std::uint8_t> on(nb, 0);
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t k = 0; k < nk; ++k) on[b] |= a(b, k);
  }
  const auto sinrs = sinr_matrix(instance, on);

  // One LP variable per association.
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t k = 0; k < nk; ++k) {
      if (a(b, k)) vars.emplace_back(b, k);
    }
  }

  double fixed = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    if (on[b]) fixed += instance.stations()[b].params.idle_power_w();
  }

  lp::LinearProgram program;
  program.cost.resize(vars.size());
  for (std::size_t v = 0; v < vars.size(); ++v) {
    program.cost[v] = instance.stations()[vars[v].first].params.load_power_w();
  }
  for (std::size_t b = 0; b < nb; ++b) {
    if (!on[b]) continue;
    lp::Row row{std::vector<double>(vars.size(), 0.0), lp::Sense::less_equal, 1.0};
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (vars[v].first == b) row.coef[v] = 1.0;
    }
    program.rows.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < nk; ++k) {
    const double d = instance.demands_bps()[k];
    if (d <= 0.0) continue;
    lp::Row row{std::vector<double>(vars.size(), 0.0), lp::Sense::greater_equal, d};
    bool any = false;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (vars[v].second != k) continue;
      row.coef[v] = capacity(sinrs(vars[v].first, k), instance.decoding().narrowband_hz);
      any = any || row.coef[v] > 0.0;
    }
    if (!any) return std::nullopt;
    program.rows.push_back(std::move(row));
  }

  AlphaSolution out;
  out.alpha = Matrix<double>(nb, nk, 0.0);
  if (vars.empty()) {
    out.raw_power_w = fixed;
    return out;
  }
  const auto sol = lp::solve(program);
  if (sol.status != lp::Status::optimal) return std::nullopt;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    out.alpha(vars[v].first, vars[v].second) = std::min(1.0, sol.x[v]);
  }
  out.raw_power_w = fixed + sol.objective;
  return out;
}

Assignment OracleResult::assignment() const {
  Assignment out(optimal_a.rows(), optimal_a.cols());
  if (status != OracleStatus::optimal) return out;
  out.a = optimal_a;
  for (std::size_t b = 0; b < optimal_a.rows(); ++b) {
    for (std::size_t k = 0; k < optimal_a.cols(); ++k) {
      if (optimal_a(b, k)) {
        out.alpha(b, k) = std::max(optimal_alpha(b, k), std::numeric_limits<double>::min());
      }
    }
  }
  return out;
}

OracleResult solve_oracle(const NetworkInstance& instance) {
  const std::size_t nb = instance.n_stations();
  const std::size_t nk = instance.n_receivers();
  const std::size_t cells = nb * nk;
  if (cells > kOracleMaxCells) {
    throw Error(ErrorCode::refused_size, "oracle is limited to |B||K| <= " +
                                             std::to_string(kOracleMaxCells) + ", got " +
                                             std::to_string(cells));
  }
  const auto& dec = instance.decoding();
  const double beta = dec.beta_linear();
  const double cap_bound = 1.0 + dec.gain / dec.cap_beta_value();

  OracleResult result;
  result.optimal_a = Matrix<std::uint8_t>(nb, nk, 0);
  result.optimal_alpha = Matrix<double>(nb, nk, 0.0);
  int best_popcount = 0;

  Matrix<std::uint8_t> a(nb, nk, 0);
  const std::uint64_t patterns = std::uint64_t{1} << cells;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    ++result.enumerated_patterns;
    for (std::size_t i = 0; i < cells; ++i) a.data()[i] = (mask >> i) & 1U;

    bool admissible = true;
    for (std::size_t k = 0; k < nk && admissible; ++k) {
      std::size_t count = 0;
      for (std::size_t b = 0; b < nb; ++b) count += a(b, k);
      admissible = static_cast<double>(count) < cap_bound;
    }
    if (!admissible) continue;

    std::vector<std::uint8_t> on(nb, 0);
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t k = 0; k < nk; ++k) on[b] |= a(b, k);
    }
    const auto sinrs = sinr_matrix(instance, on);
    for (std::size_t i = 0; i < cells && admissible; ++i) {
      if (a.data()[i] && !can_decode(sinrs.data()[i], beta)) admissible = false;
    }
    if (!admissible) continue;
    ++result.admissible_patterns;

    const auto sol = solve_alpha_subproblem(instance, a);
    if (!sol) continue;

    const int popcount = std::popcount(mask);
    bool take = false;
    if (!result.optimal_power_w) {
      take = true;
    } else {
      const double best = *result.optimal_power_w;
      const double tol = 1e-12 * std::max(1.0, std::abs(best));
      take = sol->raw_power_w < best - tol ||
             (std::abs(sol->raw_power_w - best) <= tol && popcount < best_popcount);
    }
    if (take) {
      result.optimal_power_w = sol->raw_power_w;
      result.optimal_a = a;
      result.optimal_alpha = sol->alpha;
      best_popcount = popcount;
    }
  }
  result.status = result.optimal_power_w ? OracleStatus::optimal : OracleStatus::infeasible;
  return result;
}

}  // namespace hetnet
