// hetnet: instance generation, GA solving, checking, brute-force oracle and
// experiment grids for heterogeneous downlink power minimisation.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hetnet/brkga.hpp"
#include "hetnet/config.hpp"
#include "hetnet/experiment.hpp"
#include "hetnet/oracle.hpp"
#include "hetnet/serialize.hpp"

namespace fs = std::filesystem;
using namespace hetnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

struct Overrides {
  std::string config_file;
  std::optional<double> radius_km;
  std::optional<std::size_t> n_pico;
  std::optional<std::size_t> n_receivers;
  std::optional<std::string> scenario;
  std::optional<double> demand_mbps;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> generations;
  std::optional<double> p_factor;
  std::optional<std::string> cap_beta;
  std::optional<int> threads;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "JSON config file (omitted fields use defaults)");
    app->add_option("--radius-km", radius_km, "Region radius R in km");
    app->add_option("--n-pico", n_pico, "Number of picocells");
    app->add_option("--n-receivers", n_receivers, "Number of receivers");
    app->add_option("--scenario", scenario, "0m12p, 1m12p, 2m12p, 3m12p or 3m0p");
    app->add_option("--demand-mbps", demand_mbps, "Per-receiver demand in Mbps");
    app->add_option("--seed", seed, "GA seed");
    app->add_option("--generations", generations, "Number of GA generations");
    app->add_option("--p-factor", p_factor, "Population size per variable");
    app->add_option("--cap-beta", cap_beta, "Beta used in the association cap: linear or dB");
    app->add_option("--threads", threads, "Worker thread cap");
  }

  Config resolve() const {
    Config c = config_file.empty() ? Config{} : config_from_json(read_json_file(config_file));
    if (radius_km) c.placement.region_radius_km = *radius_km;
    if (n_pico) c.placement.n_pico = *n_pico;
    if (n_receivers) c.placement.n_receivers = *n_receivers;
    if (scenario) c.scenario = *scenario;
    if (demand_mbps) c.demand_mbps = *demand_mbps;
    if (seed) c.ga.seed = *seed;
    if (generations) c.ga.n_gen = *generations;
    if (p_factor) c.ga.p_factor = *p_factor;
    if (threads) c.ga.threads = *threads;
    if (cap_beta) {
      if (*cap_beta == "linear") {
        c.decoding.cap_beta = CapBeta::linear;
      } else if (*cap_beta == "dB") {
        c.decoding.cap_beta = CapBeta::decibel;
      } else {
        throw Error(ErrorCode::invalid_argument, "--cap-beta must be 'linear' or 'dB'");
      }
    }
    return c;
  }
};

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

std::string to_text(void (*writer)(std::ostream&, const Layout&), const Layout& layout) {
  std::ostringstream out;
  writer(out, layout);
  return out.str();
}

int cmd_place(const Overrides& ov, const std::string& out_dir, bool write_instance) {
  const Config config = ov.resolve();
  const Layout layout = build_layout(config.placement);
  const auto dir = prepare_dir(out_dir);
  write_json_file((dir / "layout.json").string(), to_json(layout));
  write_text_file((dir / "layout.csv").string(), to_text(write_layout_csv, layout));
  if (write_instance) {
    const auto instance = apply_scenario(build_instance(config, layout, config.demand_mbps),
                                         Scenario::named(config.scenario));
    write_json_file((dir / "instance.json").string(), to_json(instance));
    std::ostringstream gains;
    write_gains_csv(gains, instance.gains());
    write_text_file((dir / "gains.csv").string(), gains.str());
  }
  std::cout << "stations " << 3 + layout.pico_positions.size() << ", receivers "
            << layout.receiver_positions.size() << ", pico rotation "
            << layout.pico_rotation_deg << " deg, receiver rotation "
            << layout.receiver_rotation_deg << " deg -> " << dir.string() << "\n";
  return kExitOk;
}

NetworkInstance load_or_build(const Overrides& ov, const std::string& instance_file,
                              const Config& config) {
  if (instance_file.empty()) return build_scenario_instance(config);
  auto instance = instance_from_json(read_json_file(instance_file));
  if (ov.demand_mbps) instance = instance.with_uniform_demand(*ov.demand_mbps * 1e6);
  if (ov.scenario) instance = apply_scenario(instance, Scenario::named(*ov.scenario));
  return instance;
}

int cmd_solve(const Overrides& ov, const std::string& instance_file, const std::string& out_dir,
              std::size_t trace_every) {
  Config config = ov.resolve();
  config.ga.trace_every = trace_every;
  const auto instance = load_or_build(ov, instance_file, config);
  const auto result = run(instance, config.ga);

  const auto dir = prepare_dir(out_dir);
  write_json_file((dir / "instance.json").string(), to_json(instance));
  write_json_file((dir / "result.json").string(), to_json(result));
  const Assignment& best =
      result.best_feasible_assignment ? *result.best_feasible_assignment : result.best_assignment;
  write_json_file((dir / "assignment.json").string(), to_json(best));
  std::ostringstream trace;
  write_trace_csv(trace, result.trace);
  write_text_file((dir / "trace.csv").string(), trace.str());

  std::cout << "feasible " << (result.feasible() ? "true" : "false");
  if (result.best_feasible_power_w) {
    std::cout << ", P " << format_number(*result.best_feasible_power_w) << " W, first feasible gen "
              << *result.first_feasible_generation;
  }
  std::cout << ", best penalized " << format_number(result.best_penalized_w) << " W -> "
            << dir.string() << "\n";
  return kExitOk;
}

int cmd_check(const std::string& instance_file, const std::string& assignment_file) {
  const auto instance = instance_from_json(read_json_file(instance_file));
  const auto assignment = assignment_from_json(read_json_file(assignment_file));
  if (assignment.a.rows() != instance.n_stations() ||
      assignment.a.cols() != instance.n_receivers()) {
    throw Error(ErrorCode::schema, "assignment dimensions do not match the instance");
  }
  const auto report = evaluate(instance, assignment);
  std::cout << to_json(report).dump(2) << "\n";
  return report.feasible ? kExitOk : kExitInfeasible;
}

int cmd_oracle(const Overrides& ov, const std::string& instance_file, const std::string& out) {
  const Config config = ov.resolve();
  const auto instance = load_or_build(ov, instance_file, config);
  const auto result = solve_oracle(instance);
  const auto j = to_json(result);
  if (!out.empty()) write_json_file(out, j);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_experiment(const std::string& plan_file, const std::string& out_dir, int threads,
                   bool wall_time, std::optional<std::size_t> generations) {
  auto plan = plan_from_json(read_json_file(plan_file));
  if (generations) plan.base.ga.n_gen = *generations;
  plan.validate();
  const auto dir = prepare_dir(out_dir);
  std::ofstream runs_csv(dir / "runs.csv", std::ios::binary);
  std::ofstream cells_csv(dir / "cells.csv", std::ios::binary);
  if (!runs_csv || !cells_csv) throw Error(ErrorCode::invalid_argument, "cannot write CSV output");
  write_runs_csv_header(runs_csv);
  write_cells_csv_header(cells_csv);

  run_plan(plan, threads, [&](const CellStats& cell, const std::vector<RunRecord>& runs) {
    for (const auto& r : runs) write_run_csv_row(runs_csv, r, wall_time);
    write_cell_csv_row(cells_csv, cell);
    runs_csv.flush();
    cells_csv.flush();
    std::cerr << cell.scenario << " d=" << cell.demand_mbps << " Mbps: " << cell.n_feasible_runs
              << "/" << cell.n_runs << " feasible\n";
  });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heterogeneous-network power minimisation workbench"};
  app.require_subcommand(1);

  Overrides place_ov;
  std::string place_out = "layout";
  bool place_instance = false;
  auto* place = app.add_subcommand("place", "Write the base-station and receiver layout");
  place_ov.attach(place);
  place->add_option("--out-dir", place_out, "Output directory");
  place->add_flag("--instance", place_instance, "Also write instance.json and gains.csv");

  Overrides solve_ov;
  std::string solve_instance;
  std::string solve_out = "solve";
  std::size_t trace_every = 100;
  auto* solve = app.add_subcommand("solve", "Run the genetic algorithm once");
  solve_ov.attach(solve);
  solve->add_option("--instance", solve_instance, "Instance JSON instead of a generated layout");
  solve->add_option("--out-dir", solve_out, "Output directory");
  solve->add_option("--trace-every", trace_every, "Trace decimation (0 disables)");

  std::string plan_file;
  std::string exp_out = "experiment";
  int exp_threads = 1;
  bool no_wall_time = false;
  std::optional<std::size_t> exp_generations;
  auto* experiment = app.add_subcommand("experiment", "Run a scenario x demand grid");
  experiment->add_option("plan", plan_file, "Plan JSON")->required();
  experiment->add_option("--out-dir", exp_out, "Output directory");
  experiment->add_option("--threads", exp_threads, "Concurrent solver runs");
  experiment->add_option("--generations", exp_generations, "Override GA generations");
  experiment->add_flag("--no-wall-time", no_wall_time,
                       "Leave wall_time_s empty so runs.csv is reproducible byte for byte");

  std::string check_instance;
  std::string check_assignment;
  auto* check = app.add_subcommand("check", "Evaluate a stored assignment");
  check->add_option("instance", check_instance, "Instance JSON")->required();
  check->add_option("assignment", check_assignment, "Assignment JSON")->required();

  Overrides oracle_ov;
  std::string oracle_instance;
  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum of a tiny instance");
  oracle_ov.attach(oracle);
  oracle->add_option("--instance", oracle_instance, "Instance JSON");
  oracle->add_option("--out", oracle_out, "Write the result JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*place) return cmd_place(place_ov, place_out, place_instance);
    if (*solve) return cmd_solve(solve_ov, solve_instance, solve_out, trace_every);
    if (*experiment) {
      return cmd_experiment(plan_file, exp_out, exp_threads, !no_wall_time, exp_generations);
    }
    if (*check) return cmd_check(check_instance, check_assignment);
    if (*oracle) return cmd_oracle(oracle_ov, oracle_instance, oracle_out);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
