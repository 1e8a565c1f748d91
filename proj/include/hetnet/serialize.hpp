#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hetnet/brkga.hpp"
#include "hetnet/config.hpp"
#include "hetnet/experiment.hpp"
#include "hetnet/geometry.hpp"
#include "hetnet/oracle.hpp"
#include "hetnet/problem.hpp"

namespace hetnet {

using json = nlohmann::json;

// JSON documents. Matrices are nested arrays, outer index station, inner
// index receiver. Readers reject unknown keys and wrong types with
// ErrorCode::schema; omitted config fields keep their defaults.

json to_json(const Layout& layout);
Layout layout_from_json(const json& j);

json to_json(const BaseStationParams& params);
BaseStationParams station_params_from_json(const json& j, BaseStationParams defaults);

json to_json(const DecodingParams& decoding);
DecodingParams decoding_from_json(const json& j, DecodingParams defaults = {});

json to_json(const GaParams& ga);
GaParams ga_params_from_json(const json& j, GaParams defaults = {});

json to_json(const Config& config);
Config config_from_json(const json& j);

json to_json(const ExperimentPlan& plan);
ExperimentPlan plan_from_json(const json& j);

json to_json(const NetworkInstance& instance);
NetworkInstance instance_from_json(const json& j);

json to_json(const Assignment& assignment);
Assignment assignment_from_json(const json& j);

json to_json(const EvaluationReport& report);
json to_json(const SolverResult& result);
json to_json(const OracleResult& result);

// CSV tables.

/// Shortest round-trip decimal form.
std::string format_number(double value);

void write_layout_csv(std::ostream& out, const Layout& layout);
void write_gains_csv(std::ostream& out, const GainMatrix& gains);
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

void write_runs_csv_header(std::ostream& out);
void write_run_csv_row(std::ostream& out, const RunRecord& rec, bool with_wall_time = true);
void write_cells_csv_header(std::ostream& out);
void write_cell_csv_row(std::ostream& out, const CellStats& cell);

// Files.

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hetnet
