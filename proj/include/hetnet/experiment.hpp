#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hetnet/config.hpp"

namespace hetnet {

struct ExperimentPlan {
  Config base;  // placement, station and decoding parameters, GA settings
  std::vector<std::string> scenarios{"0m12p", "1m12p", "2m12p", "3m12p", "3m0p"};
  std::vector<double> demands_mbps{3.0, 6.0, 9.0, 12.0, 15.0};
  std::size_t runs_per_cell = 6;
  std::uint64_t master_seed = 1;

  void validate() const;

  friend bool operator==(const ExperimentPlan&, const ExperimentPlan&) = default;
};

struct RunRecord {
  std::string scenario;
  double demand_mbps = 0.0;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  bool feasible = false;
  std::optional<double> best_power_w;
  std::optional<std::size_t> first_feasible_generation;
  double wall_time_s = 0.0;
};

struct CellStats {
  std::string scenario;
  double demand_mbps = 0.0;
  std::size_t n_runs = 0;
  std::size_t n_feasible_runs = 0;
  std::optional<double> mean_power_w;
  std::optional<double> ci95_power_w;
  std::optional<double> mean_first_feasible_gen;
  std::optional<double> ci95_first_feasible_gen;
};

struct ExperimentTable {
  std::vector<RunRecord> runs;  // canonical order: scenario, demand, run
  std::vector<CellStats> cells;
};

struct Aggregate {
  double mean = 0.0;
  std::optional<double> ci_halfwidth;
};

/// Sample mean and two-sided Student-t halfwidth t_{(1+c)/2, n-1} s / sqrt(n).
/// The halfwidth is absent for fewer than two values.
Aggregate aggregate(const std::vector<double>& values, double confidence = 0.95);

/// Deterministic seed of one run.
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t scenario_index,
                       std::size_t demand_index, std::size_t run_index);

CellStats summarise_cell(const std::string& scenario, double demand_mbps,
                         const std::vector<RunRecord>& runs);

/// Called once per finished cell, in canonical cell order.
using CellCallback = std::function<void(const CellStats&, const std::vector<RunRecord>&)>;

/// Runs every (scenario, demand) cell runs_per_cell times. Up to `threads`
/// solver runs execute concurrently; each run is single-threaded, so the
/// table does not depend on `threads`.
ExperimentTable run_plan(const ExperimentPlan& plan, int threads = 1,
                         const CellCallback& on_cell = {});

}  // namespace hetnet
