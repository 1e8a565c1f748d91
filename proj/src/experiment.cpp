#include "hetnet/experiment.hpp"

#include <omp.h>

#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numeric>

namespace hetnet {

void ExperimentPlan::validate() const {
  if (scenarios.empty()) throw Error(ErrorCode::invalid_argument, "plan needs a scenario");
  if (demands_mbps.empty()) throw Error(ErrorCode::invalid_argument, "plan needs a demand");
  for (double d : demands_mbps) {
    if (!(d > 0.0)) throw Error(ErrorCode::invalid_argument, "plan demands must be positive");
  }
  if (runs_per_cell < 2) {
    throw Error(ErrorCode::invalid_argument, "confidence intervals need at least 2 runs per cell");
  }
  base.ga.validate();
  for (const auto& s : scenarios) {
    bool known = false;
    for (const auto& n : scenario_names()) known = known || n == s;
    if (!known) throw Error(ErrorCode::invalid_argument, "unknown scenario '" + s + "'");
  }
}

Aggregate aggregate(const std::vector<double>& values, double confidence) {
  if (values.empty()) throw Error(ErrorCode::invalid_argument, "cannot aggregate no values");
  Aggregate out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  const double s = std::sqrt(ss / (n - 1.0));
  const boost::math::students_t dist(n - 1.0);
  const double t = boost::math::quantile(dist, 0.5 + confidence / 2.0);
  out.ci_halfwidth = t * s / std::sqrt(n);
  return out;
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t scenario_index,
                       std::size_t demand_index, std::size_t run_index) {
  std::uint64_t h = mix_seed(master_seed);
  h = mix_seed(h ^ scenario_index);
  h = mix_seed(h ^ demand_index);
  return mix_seed(h ^ run_index);
}

CellStats summarise_cell(const std::string& scenario, double demand_mbps,
                         const std::vector<RunRecord>& runs) {
  CellStats cell;
  cell.scenario = scenario;
  cell.demand_mbps = demand_mbps;
  cell.n_runs = runs.size();
  std::vector<double> powers;
  std::vector<double> gens;
  for (const auto& r : runs) {
    if (!r.feasible) continue;
    powers.push_back(*r.best_power_w);
    gens.push_back(static_cast<double>(*r.first_feasible_generation));
  }
  cell.n_feasible_runs = powers.size();
  if (!powers.empty()) {
    const auto p = aggregate(powers);
    const auto g = aggregate(gens);
    cell.mean_power_w = p.mean;
    cell.ci95_power_w = p.ci_halfwidth;
    cell.mean_first_feasible_gen = g.mean;
    cell.ci95_first_feasible_gen = g.ci_halfwidth;
  }
  return cell;
}

ExperimentTable run_plan(const ExperimentPlan& plan, int threads, const CellCallback& on_cell) {
  plan.validate();
  if (threads < 1) throw Error(ErrorCode::invalid_argument, "threads must be at least 1");

  const Layout layout = build_layout(plan.base.placement);
  const std::size_t n_s = plan.scenarios.size();
  const std::size_t n_d = plan.demands_mbps.size();
  const std::size_t n_r = plan.runs_per_cell;
  const std::size_t n_cells = n_s * n_d;

  std::vector<NetworkInstance> instances;
  instances.reserve(n_cells);
  for (std::size_t s = 0; s < n_s; ++s) {
    for (std::size_t d = 0; d < n_d; ++d) {
      instances.push_back(apply_scenario(build_instance(plan.base, layout, plan.demands_mbps[d]),
                                         Scenario::named(plan.scenarios[s])));
    }
  }

  ExperimentTable table;
  table.runs.resize(n_cells * n_r);
  table.cells.resize(n_cells);
  std::vector<std::size_t> remaining(n_cells, n_r);
  std::size_t next_to_report = 0;
  std::mutex mutex;

  const auto n_jobs = static_cast<std::ptrdiff_t>(n_cells * n_r);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
  for (std::ptrdiff_t job = 0; job < n_jobs; ++job) {
    const auto j = static_cast<std::size_t>(job);
    const std::size_t cell = j / n_r;
    const std::size_t run = j % n_r;
    const std::size_t s = cell / n_d;
    const std::size_t d = cell % n_d;

    GaParams ga = plan.base.ga;
    ga.seed = run_seed(plan.master_seed, s, d, run);
    ga.threads = 1;
    ga.trace_every = 0;

    const auto start = std::chrono::steady_clock::now();
    const auto result = hetnet::run(instances[cell], ga);
    const auto stop = std::chrono::steady_clock::now();

    RunRecord rec;
    rec.scenario = plan.scenarios[s];
    rec.demand_mbps = plan.demands_mbps[d];
    rec.run = run;
    rec.seed = ga.seed;
    rec.feasible = result.feasible();
    rec.best_power_w = result.best_feasible_power_w;
    rec.first_feasible_generation = result.first_feasible_generation;
    rec.wall_time_s = std::chrono::duration<double>(stop - start).count();

    std::lock_guard lock(mutex);
    table.runs[j] = std::move(rec);
    if (--remaining[cell] == 0) {
      const std::vector<RunRecord> runs(table.runs.begin() + cell * n_r,
                                        table.runs.begin() + (cell + 1) * n_r);
      table.cells[cell] = summarise_cell(plan.scenarios[s], plan.demands_mbps[d], runs);
    }
    while (next_to_report < n_cells && remaining[next_to_report] == 0) {
      if (on_cell) {
        const std::vector<RunRecord> runs(table.runs.begin() + next_to_report * n_r,
                                          table.runs.begin() + (next_to_report + 1) * n_r);
        on_cell(table.cells[next_to_report], runs);
      }
      ++next_to_report;
    }
  }
  return table;
}

}  // namespace hetnet
