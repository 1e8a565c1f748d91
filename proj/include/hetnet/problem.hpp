#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hetnet/common.hpp"
#include "hetnet/radio.hpp"

namespace hetnet {

/// Immutable problem description. Gains and the per-violation penalty are
/// derived at construction.
class NetworkInstance {
 public:
  NetworkInstance() = default;
  NetworkInstance(std::vector<StationSite> stations, std::vector<Point> receivers,
                  std::vector<double> demands_bps, DecodingParams decoding, double eta);

  const std::vector<StationSite>& stations() const noexcept { return stations_; }
  const std::vector<Point>& receivers() const noexcept { return receivers_; }
  const std::vector<double>& demands_bps() const noexcept { return demands_bps_; }
  const DecodingParams& decoding() const noexcept { return decoding_; }
  double eta() const noexcept { return eta_; }
  const GainMatrix& gains() const noexcept { return gains_; }
  double p_viol_w() const noexcept { return p_viol_w_; }

  std::size_t n_stations() const noexcept { return stations_.size(); }
  std::size_t n_receivers() const noexcept { return receivers_.size(); }

  /// Copy with every demand replaced by the same value.
  NetworkInstance with_uniform_demand(double demand_bps) const;

 private:
  std::vector<StationSite> stations_;
  std::vector<Point> receivers_;
  std::vector<double> demands_bps_;
  DecodingParams decoding_;
  double eta_ = 0.005;
  GainMatrix gains_;
  double p_viol_w_ = 0.0;
};

/// Sum over stations of P_sf + P_tx: the largest raw objective any
/// assignment can reach.
double p_viol(const NetworkInstance& instance);

/// Binary association matrix a and time-share matrix alpha, both indexed
/// (station, receiver).
struct Assignment {
  Matrix<std::uint8_t> a;
  Matrix<double> alpha;

  Assignment() = default;
  Assignment(std::size_t n_stations, std::size_t n_receivers)
      : a(n_stations, n_receivers, 0), alpha(n_stations, n_receivers, 1.0) {}

  /// a_b = max_k a_bk.
  std::vector<std::uint8_t> station_on() const;
  /// rho_b = sum_k a_bk alpha_bk.
  std::vector<double> load() const;

  /// Throws schema when a is not binary or alpha leaves (0, 1].
  void validate(std::size_t n_stations, std::size_t n_receivers) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct ViolationCounts {
  std::size_t decode = 0;
  std::size_t assoc_cap = 0;
  std::size_t time_budget = 0;
  std::size_t demand = 0;
  std::size_t surplus_cap = 0;

  std::size_t total() const { return decode + assoc_cap + time_budget + demand + surplus_cap; }
  /// Violations that make an assignment infeasible; the surplus cap is
  /// only a search aid.
  std::size_t hard() const { return decode + assoc_cap + time_budget + demand; }

  friend bool operator==(const ViolationCounts&, const ViolationCounts&) = default;
};

struct EvaluationReport {
  double support_power_w = 0.0;
  double tx_power_w = 0.0;
  double raw_power_w = 0.0;
  ViolationCounts violations;
  std::size_t v_total = 0;
  double penalized_power_w = 0.0;
  bool feasible = false;

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

/// Relative slack applied to the time-budget, demand and surplus-cap
/// comparisons so that exact LP vertices are not rejected for rounding.
inline constexpr double kConstraintRelTol = 1e-9;

/// SINR of every (b, k) under the on/off pattern. Off stations get 0.
Matrix<double> sinr_matrix(const NetworkInstance& instance,
                           const std::vector<std::uint8_t>& station_on);

double sinr(const NetworkInstance& instance, const Assignment& assignment,
            std::size_t b, std::size_t k);

std::pair<double, double> power_terms(const NetworkInstance& instance,
                                      const Assignment& assignment);

EvaluationReport evaluate(const NetworkInstance& instance, const Assignment& assignment);

// ---------------------------------------------------------------------------
// Scenarios

/// Either one of the named scenarios 0m12p, 1m12p, 2m12p, 3m12p, 3m0p or an
/// explicit list of station ids that must never be on.
struct Scenario {
  std::variant<std::string, std::vector<std::size_t>> spec;

  static Scenario named(std::string name) { return Scenario{std::move(name)}; }
  static Scenario forbid(std::vector<std::size_t> ids) { return Scenario{std::move(ids)}; }

  std::string label() const;
};

const std::vector<std::string>& scenario_names();

/// Station ids a scenario forbids. Macrocells are numbered in instance
/// order, 1m keeping the first and 2m the first two.
std::vector<std::size_t> forbidden_stations(const NetworkInstance& instance,
                                            const Scenario& scenario);

/// Zeroes P_tx of every forbidden station, which zeroes its gain row.
NetworkInstance apply_scenario(const NetworkInstance& instance, const Scenario& scenario);

}  // namespace hetnet
