#include "hetnet/serialize.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hetnet {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::schema, where + ": " + what);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) schema_error(where, "unknown key '" + key + "'");
  }
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) schema_error(where, std::string("missing key '") + key + "'");
  return j.at(key);
}

double as_double(const json& v, const std::string& where) {
  if (!v.is_number()) schema_error(where, "expected a number");
  return v.get<double>();
}

std::size_t as_size(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) schema_error(where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

std::uint64_t as_u64(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) schema_error(where, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) schema_error(where, "expected a boolean");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) schema_error(where, "expected a string");
  return v.get<std::string>();
}

void read_double(const json& j, const char* key, double& out, const std::string& where) {
  if (j.contains(key)) out = as_double(j.at(key), where + "." + key);
}

void read_size(const json& j, const char* key, std::size_t& out, const std::string& where) {
  if (j.contains(key)) out = as_size(j.at(key), where + "." + key);
}

json point_json(const Point& p) { return json::array({p.x, p.y}); }

Point point_from(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) schema_error(where, "expected [x_km, y_km]");
  return {as_double(v[0], where), as_double(v[1], where)};
}

std::vector<Point> points_from(const json& v, const std::string& where) {
  if (!v.is_array()) schema_error(where, "expected an array of points");
  std::vector<Point> out;
  for (const auto& p : v) out.push_back(point_from(p, where));
  return out;
}

json sector_json(const Sector& s) { return json::array({s.begin_deg, s.end_deg}); }

Sector sector_from(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) schema_error(where, "expected [begin_deg, end_deg]");
  return {as_double(v[0], where), as_double(v[1], where)};
}

template <typename T>
json matrix_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix<double> double_matrix_from(const json& v, std::size_t rows, std::size_t cols,
                                  const std::string& where) {
  if (!v.is_array() || v.size() != rows) schema_error(where, "wrong number of rows");
  Matrix<double> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!v[r].is_array() || v[r].size() != cols) schema_error(where, "wrong number of columns");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = as_double(v[r][c], where);
  }
  return m;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string{};
}

const char* cap_beta_name(CapBeta c) { return c == CapBeta::linear ? "linear" : "dB"; }

}  // namespace

// ---------------------------------------------------------------------------

json to_json(const Layout& layout) {
  json j;
  j["format"] = "hetnet-layout/1";
  j["region_radius_km"] = layout.region_radius_km;
  json sectors = json::array();
  for (const auto& s : layout.sectors) sectors.push_back(sector_json(s));
  j["sectors_deg"] = sectors;
  json macros = json::array();
  for (const auto& p : layout.macro_positions) macros.push_back(point_json(p));
  j["macro_positions_km"] = macros;
  json picos = json::array();
  for (const auto& p : layout.pico_positions) picos.push_back(point_json(p));
  j["pico_positions_km"] = picos;
  json receivers = json::array();
  for (const auto& p : layout.receiver_positions) receivers.push_back(point_json(p));
  j["receiver_positions_km"] = receivers;
  j["pico_rotation_deg"] = layout.pico_rotation_deg;
  j["receiver_rotation_deg"] = layout.receiver_rotation_deg;
  return j;
}

Layout layout_from_json(const json& j) {
  const std::string w = "layout";
  check_keys(j,
             {"format", "region_radius_km", "sectors_deg", "macro_positions_km",
              "pico_positions_km", "receiver_positions_km", "pico_rotation_deg",
              "receiver_rotation_deg"},
             w);
  Layout layout;
  layout.region_radius_km = as_double(require(j, "region_radius_km", w), w + ".region_radius_km");
  const auto& sectors = require(j, "sectors_deg", w);
  if (!sectors.is_array() || sectors.size() != 3) schema_error(w, "expected 3 sectors");
  for (std::size_t s = 0; s < 3; ++s) layout.sectors[s] = sector_from(sectors[s], w + ".sectors_deg");
  const auto macros = points_from(require(j, "macro_positions_km", w), w + ".macro_positions_km");
  if (macros.size() != 3) schema_error(w, "expected 3 macro positions");
  for (std::size_t s = 0; s < 3; ++s) layout.macro_positions[s] = macros[s];
  layout.pico_positions = points_from(require(j, "pico_positions_km", w), w + ".pico_positions_km");
  layout.receiver_positions =
      points_from(require(j, "receiver_positions_km", w), w + ".receiver_positions_km");
  read_double(j, "pico_rotation_deg", layout.pico_rotation_deg, w);
  read_double(j, "receiver_rotation_deg", layout.receiver_rotation_deg, w);
  return layout;
}

json to_json(const BaseStationParams& p) {
  return {{"class", to_string(p.cls)},     {"path_loss_db", p.path_loss_db},
          {"tau", p.tau},                  {"support_power_w", p.support_power_w},
          {"phi_sf", p.phi_sf},            {"tx_budget_w", p.tx_budget_w},
          {"phi_tx", p.phi_tx}};
}

BaseStationParams station_params_from_json(const json& j, BaseStationParams p) {
  const std::string w = "station params";
  check_keys(j, {"class", "path_loss_db", "tau", "support_power_w", "phi_sf", "tx_budget_w",
                 "phi_tx"},
             w);
  if (j.contains("class")) p.cls = station_class_from_string(as_string(j.at("class"), w));
  read_double(j, "path_loss_db", p.path_loss_db, w);
  read_double(j, "tau", p.tau, w);
  read_double(j, "support_power_w", p.support_power_w, w);
  read_double(j, "phi_sf", p.phi_sf, w);
  read_double(j, "tx_budget_w", p.tx_budget_w, w);
  read_double(j, "phi_tx", p.phi_tx, w);
  return p;
}

json to_json(const DecodingParams& d) {
  return {{"gamma0_w_per_hz", d.gamma0_w_per_hz},
          {"beta_db", d.beta_db},
          {"narrowband_hz", d.narrowband_hz},
          {"gain", d.gain},
          {"cap_beta", cap_beta_name(d.cap_beta)}};
}

DecodingParams decoding_from_json(const json& j, DecodingParams d) {
  const std::string w = "decoding";
  check_keys(j, {"gamma0_w_per_hz", "beta_db", "narrowband_hz", "gain", "cap_beta"}, w);
  read_double(j, "gamma0_w_per_hz", d.gamma0_w_per_hz, w);
  read_double(j, "beta_db", d.beta_db, w);
  read_double(j, "narrowband_hz", d.narrowband_hz, w);
  read_double(j, "gain", d.gain, w);
  if (j.contains("cap_beta")) {
    const auto name = as_string(j.at("cap_beta"), w + ".cap_beta");
    if (name == "linear") {
      d.cap_beta = CapBeta::linear;
    } else if (name == "dB") {
      d.cap_beta = CapBeta::decibel;
    } else {
      schema_error(w + ".cap_beta", "expected 'linear' or 'dB'");
    }
  }
  return d;
}

json to_json(const GaParams& g) {
  return {{"p_factor", g.p_factor},   {"elite_fraction", g.elite_fraction},
          {"mutant_fraction", g.mutant_fraction}, {"rho_e", g.rho_e},
          {"n_pop", g.n_pop},         {"n_gen", g.n_gen},
          {"seed", g.seed},           {"trace_every", g.trace_every},
          {"threads", g.threads}};
}

GaParams ga_params_from_json(const json& j, GaParams g) {
  const std::string w = "ga";
  check_keys(j, {"p_factor", "elite_fraction", "mutant_fraction", "rho_e", "n_pop", "n_gen",
                 "seed", "trace_every", "threads"},
             w);
  read_double(j, "p_factor", g.p_factor, w);
  read_double(j, "elite_fraction", g.elite_fraction, w);
  read_double(j, "mutant_fraction", g.mutant_fraction, w);
  read_double(j, "rho_e", g.rho_e, w);
  read_size(j, "n_pop", g.n_pop, w);
  read_size(j, "n_gen", g.n_gen, w);
  if (j.contains("seed")) g.seed = as_u64(j.at("seed"), w + ".seed");
  read_size(j, "trace_every", g.trace_every, w);
  if (j.contains("threads")) g.threads = static_cast<int>(as_size(j.at("threads"), w + ".threads"));
  return g;
}

json to_json(const Config& c) {
  return {{"placement",
           {{"region_radius_km", c.placement.region_radius_km},
            {"n_pico", c.placement.n_pico},
            {"n_receivers", c.placement.n_receivers},
            {"balance_sectors", c.placement.balance_sectors}}},
          {"macro", to_json(c.macro)},
          {"pico", to_json(c.pico)},
          {"decoding", to_json(c.decoding)},
          {"eta", c.eta},
          {"ga", to_json(c.ga)},
          {"scenario", c.scenario},
          {"demand_mbps", c.demand_mbps}};
}

Config config_from_json(const json& j) {
  const std::string w = "config";
  check_keys(j, {"placement", "macro", "pico", "decoding", "eta", "ga", "scenario", "demand_mbps"},
             w);
  Config c;
  if (j.contains("placement")) {
    const auto& p = j.at("placement");
    const std::string pw = w + ".placement";
    check_keys(p, {"region_radius_km", "n_pico", "n_receivers", "balance_sectors"}, pw);
    read_double(p, "region_radius_km", c.placement.region_radius_km, pw);
    read_size(p, "n_pico", c.placement.n_pico, pw);
    read_size(p, "n_receivers", c.placement.n_receivers, pw);
    if (p.contains("balance_sectors")) {
      c.placement.balance_sectors = as_bool(p.at("balance_sectors"), pw + ".balance_sectors");
    }
  }
  if (j.contains("macro")) c.macro = station_params_from_json(j.at("macro"), c.macro);
  if (j.contains("pico")) c.pico = station_params_from_json(j.at("pico"), c.pico);
  if (j.contains("decoding")) c.decoding = decoding_from_json(j.at("decoding"), c.decoding);
  read_double(j, "eta", c.eta, w);
  if (j.contains("ga")) c.ga = ga_params_from_json(j.at("ga"), c.ga);
  if (j.contains("scenario")) c.scenario = as_string(j.at("scenario"), w + ".scenario");
  read_double(j, "demand_mbps", c.demand_mbps, w);
  return c;
}

json to_json(const ExperimentPlan& plan) {
  return {{"config", to_json(plan.base)},
          {"scenarios", plan.scenarios},
          {"demands_mbps", plan.demands_mbps},
          {"runs_per_cell", plan.runs_per_cell},
          {"master_seed", plan.master_seed}};
}

ExperimentPlan plan_from_json(const json& j) {
  const std::string w = "plan";
  check_keys(j, {"config", "scenarios", "demands_mbps", "runs_per_cell", "master_seed"}, w);
  ExperimentPlan plan;
  if (j.contains("config")) plan.base = config_from_json(j.at("config"));
  if (j.contains("scenarios")) {
    const auto& s = j.at("scenarios");
    if (!s.is_array()) schema_error(w + ".scenarios", "expected an array");
    plan.scenarios.clear();
    for (const auto& v : s) plan.scenarios.push_back(as_string(v, w + ".scenarios"));
  }
  if (j.contains("demands_mbps")) {
    const auto& d = j.at("demands_mbps");
    if (!d.is_array()) schema_error(w + ".demands_mbps", "expected an array");
    plan.demands_mbps.clear();
    for (const auto& v : d) plan.demands_mbps.push_back(as_double(v, w + ".demands_mbps"));
  }
  read_size(j, "runs_per_cell", plan.runs_per_cell, w);
  if (j.contains("master_seed")) plan.master_seed = as_u64(j.at("master_seed"), w + ".master_seed");
  return plan;
}

json to_json(const NetworkInstance& instance) {
  json stations = json::array();
  for (const auto& s : instance.stations()) {
    stations.push_back({{"params", to_json(s.params)},
                        {"position_km", point_json(s.position)},
                        {"sector_deg", s.sector ? sector_json(*s.sector) : json(nullptr)}});
  }
  json receivers = json::array();
  for (const auto& p : instance.receivers()) receivers.push_back(point_json(p));
  return {{"format", "hetnet-instance/1"},
          {"stations", stations},
          {"receivers_km", receivers},
          {"demands_bps", instance.demands_bps()},
          {"decoding", to_json(instance.decoding())},
          {"eta", instance.eta()},
          {"p_viol_w", instance.p_viol_w()}};
}

NetworkInstance instance_from_json(const json& j) {
  const std::string w = "instance";
  check_keys(j, {"format", "stations", "receivers_km", "demands_bps", "decoding", "eta", "p_viol_w"},
             w);
  const auto& st = require(j, "stations", w);
  if (!st.is_array()) schema_error(w + ".stations", "expected an array");
  std::vector<StationSite> stations;
  for (const auto& s : st) {
    const std::string sw = w + ".stations[]";
    check_keys(s, {"params", "position_km", "sector_deg"}, sw);
    StationSite site;
    site.params = station_params_from_json(require(s, "params", sw), BaseStationParams{});
    site.position = point_from(require(s, "position_km", sw), sw + ".position_km");
    if (s.contains("sector_deg") && !s.at("sector_deg").is_null()) {
      site.sector = sector_from(s.at("sector_deg"), sw + ".sector_deg");
    }
    stations.push_back(site);
  }
  auto receivers = points_from(require(j, "receivers_km", w), w + ".receivers_km");
  const auto& dj = require(j, "demands_bps", w);
  if (!dj.is_array()) schema_error(w + ".demands_bps", "expected an array");
  std::vector<double> demands;
  for (const auto& v : dj) demands.push_back(as_double(v, w + ".demands_bps"));
  DecodingParams decoding;
  if (j.contains("decoding")) decoding = decoding_from_json(j.at("decoding"));
  double eta = 0.005;
  read_double(j, "eta", eta, w);
  try {
    return NetworkInstance(std::move(stations), std::move(receivers), std::move(demands), decoding,
                           eta);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::invalid_argument) schema_error(w, e.what());
    throw;
  }
}

json to_json(const Assignment& a) {
  return {{"format", "hetnet-assignment/1"},
          {"n_stations", a.a.rows()},
          {"n_receivers", a.a.cols()},
          {"a", matrix_json(a.a)},
          {"alpha", matrix_json(a.alpha)}};
}

Assignment assignment_from_json(const json& j) {
  const std::string w = "assignment";
  check_keys(j, {"format", "n_stations", "n_receivers", "a", "alpha"}, w);
  const std::size_t nb = as_size(require(j, "n_stations", w), w + ".n_stations");
  const std::size_t nk = as_size(require(j, "n_receivers", w), w + ".n_receivers");
  Assignment out(nb, nk);
  const auto& a = require(j, "a", w);
  if (!a.is_array() || a.size() != nb) schema_error(w + ".a", "wrong number of rows");
  for (std::size_t b = 0; b < nb; ++b) {
    if (!a[b].is_array() || a[b].size() != nk) schema_error(w + ".a", "wrong number of columns");
    for (std::size_t k = 0; k < nk; ++k) {
      const auto v = as_size(a[b][k], w + ".a");
      if (v > 1) schema_error(w + ".a", "entries must be 0 or 1");
      out.a(b, k) = static_cast<std::uint8_t>(v);
    }
  }
  out.alpha = double_matrix_from(require(j, "alpha", w), nb, nk, w + ".alpha");
  out.validate(nb, nk);
  return out;
}

json to_json(const EvaluationReport& r) {
  return {{"support_power_w", r.support_power_w},
          {"tx_power_w", r.tx_power_w},
          {"raw_power_w", r.raw_power_w},
          {"violations",
           {{"decode", r.violations.decode},
            {"assoc_cap", r.violations.assoc_cap},
            {"time_budget", r.violations.time_budget},
            {"demand", r.violations.demand},
            {"surplus_cap", r.violations.surplus_cap}}},
          {"v_total", r.v_total},
          {"penalized_power_w", r.penalized_power_w},
          {"feasible", r.feasible}};
}

json to_json(const SolverResult& r) {
  return {{"feasible", r.feasible()},
          {"best_feasible_power_w", optional_json(r.best_feasible_power_w)},
          {"best_feasible_from_incumbent", r.best_feasible_from_incumbent},
          {"incumbent_power_w", optional_json(r.incumbent_power_w)},
          {"first_feasible_generation", optional_json(r.first_feasible_generation)},
          {"best_penalized_w", r.best_penalized_w},
          {"generations_run", r.generations_run},
          {"seed", r.seed},
          {"rng", r.rng},
          {"best_assignment", to_json(r.best_assignment)},
          {"best_feasible_assignment",
           r.best_feasible_assignment ? to_json(*r.best_feasible_assignment) : json(nullptr)}};
}

json to_json(const OracleResult& r) {
  return {{"status", r.status == OracleStatus::optimal ? "optimal" : "infeasible"},
          {"optimal_power_w", optional_json(r.optimal_power_w)},
          {"optimal_a", matrix_json(r.optimal_a)},
          {"optimal_alpha", matrix_json(r.optimal_alpha)},
          {"enumerated_patterns", r.enumerated_patterns},
          {"admissible_patterns", r.admissible_patterns},
          {"assignment", r.status == OracleStatus::optimal ? to_json(r.assignment()) : json(nullptr)}};
}

// ---------------------------------------------------------------------------

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_layout_csv(std::ostream& out, const Layout& layout) {
  out << "kind,x_km,y_km,sector\n";
  for (std::size_t s = 0; s < 3; ++s) {
    const auto& p = layout.macro_positions[s];
    out << "macro," << format_number(p.x) << ',' << format_number(p.y) << ',' << s << '\n';
  }
  for (const auto& p : layout.pico_positions) {
    out << "pico," << format_number(p.x) << ',' << format_number(p.y) << ','
        << sector_of(p, layout.sectors) << '\n';
  }
  for (const auto& p : layout.receiver_positions) {
    out << "receiver," << format_number(p.x) << ',' << format_number(p.y) << ','
        << sector_of(p, layout.sectors) << '\n';
  }
}

void write_gains_csv(std::ostream& out, const GainMatrix& gains) {
  out << "b,k,R_watts\n";
  for (std::size_t b = 0; b < gains.rows(); ++b) {
    for (std::size_t k = 0; k < gains.cols(); ++k) {
      out << b << ',' << k << ',' << format_number(gains(b, k)) << '\n';
    }
  }
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "generation,best_penalized_W,best_feasible_P_W\n";
  for (const auto& row : trace) {
    out << row.generation << ',' << format_number(row.best_penalized_w) << ','
        << optional_number(row.best_feasible_power_w) << '\n';
  }
}

void write_runs_csv_header(std::ostream& out) {
  out << "scenario,d_k_mbps,run,seed,feasible,best_P_W,first_feasible_gen,wall_time_s\n";
}

void write_run_csv_row(std::ostream& out, const RunRecord& r, bool with_wall_time) {
  out << r.scenario << ',' << format_number(r.demand_mbps) << ',' << r.run << ',' << r.seed << ','
      << (r.feasible ? 1 : 0) << ',' << optional_number(r.best_power_w) << ',';
  if (r.first_feasible_generation) out << *r.first_feasible_generation;
  out << ',';
  if (with_wall_time) out << format_number(r.wall_time_s);
  out << '\n';
}

void write_cells_csv_header(std::ostream& out) {
  out << "scenario,d_k_mbps,n_runs,n_feasible_runs,mean_P_W,ci95_P_W,mean_first_feasible_gen,"
         "ci95_first_feasible_gen\n";
}

void write_cell_csv_row(std::ostream& out, const CellStats& c) {
  out << c.scenario << ',' << format_number(c.demand_mbps) << ',' << c.n_runs << ','
      << c.n_feasible_runs << ',' << optional_number(c.mean_power_w) << ','
      << optional_number(c.ci95_power_w) << ',' << optional_number(c.mean_first_feasible_gen)
      << ',' << optional_number(c.ci95_first_feasible_gen) << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::schema, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::schema, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write '" + path + "'");
  out << text;
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace hetnet
