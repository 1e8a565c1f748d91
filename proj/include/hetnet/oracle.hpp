#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "hetnet/problem.hpp"

namespace hetnet {

/// Largest |B||K| the exhaustive oracle accepts.
inline constexpr std::size_t kOracleMaxCells = 12;

struct AlphaSolution {
  Matrix<double> alpha;  // LP optimum; zero where a_bk = 0
  double raw_power_w = 0.0;
};

/// Exact minimum of the raw objective over alpha for a fixed association
/// pattern (which the caller has already checked for decodability and the
/// association cap). Returns nullopt when no alpha meets every demand within
/// the time budgets.
std::optional<AlphaSolution> solve_alpha_subproblem(const NetworkInstance& instance,
                                                    const Matrix<std::uint8_t>& a);

enum class OracleStatus { optimal, infeasible };

struct OracleResult {
  OracleStatus status = OracleStatus::infeasible;
  std::optional<double> optimal_power_w;
  Matrix<std::uint8_t> optimal_a;
  Matrix<double> optimal_alpha;
  std::uint64_t enumerated_patterns = 0;
  std::uint64_t admissible_patterns = 0;

  /// The optimum as an Assignment: alpha entries the LP leaves at 0 are
  /// lifted to the smallest positive double.
  Assignment assignment() const;
};

/// Enumerates every binary association matrix. Throws refused_size when
/// |B||K| exceeds kOracleMaxCells.
OracleResult solve_oracle(const NetworkInstance& instance);

}  // namespace hetnet
