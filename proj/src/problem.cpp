#include "hetnet/problem.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

namespace hetnet {

NetworkInstance::NetworkInstance(std::vector<StationSite> stations, std::vector<Point> receivers,
                                 std::vector<double> demands_bps, DecodingParams decoding,
                                 double eta)
    : stations_(std::move(stations)),
      receivers_(std::move(receivers)),
      demands_bps_(std::move(demands_bps)),
      decoding_(decoding),
      eta_(eta) {
  if (demands_bps_.size() != receivers_.size()) {
    throw Error(ErrorCode::invalid_argument, "one demand per receiver is required");
  }
  for (double d : demands_bps_) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw Error(ErrorCode::invalid_argument, "demands must be finite and non-negative");
    }
  }
  if (!(eta_ > 0.0 && eta_ < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "eta must lie in (0, 1)");
  }
  decoding_.validate();
  for (const auto& s : stations_) s.params.validate();
  gains_ = build_gain_matrix(stations_, receivers_);
  p_viol_w_ = 0.0;
  for (const auto& s : stations_) p_viol_w_ += s.params.support_power_w + s.params.tx_budget_w;
}

NetworkInstance NetworkInstance::with_uniform_demand(double demand_bps) const {
  return NetworkInstance(stations_, receivers_,
                         std::vector<double>(receivers_.size(), demand_bps), decoding_, eta_);
}

double p_viol(const NetworkInstance& instance) { return instance.p_viol_w(); }

std::vector<std::uint8_t> Assignment::station_on() const {
  std::vector<std::uint8_t> on(a.rows(), 0);
  for (std::size_t b = 0; b < a.rows(); ++b) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(b, k)) {
        on[b] = 1;
        break;
      }
    }
  }
  return on;
}

std::vector<double> Assignment::load() const {
  std::vector<double> rho(a.rows(), 0.0);
  for (std::size_t b = 0; b < a.rows(); ++b) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(b, k)) rho[b] += alpha(b, k);
    }
  }
  return rho;
}

void Assignment::validate(std::size_t n_stations, std::size_t n_receivers) const {
  if (a.rows() != n_stations || a.cols() != n_receivers || alpha.rows() != n_stations ||
      alpha.cols() != n_receivers) {
    throw Error(ErrorCode::schema, "assignment dimensions do not match the instance");
  }
  for (auto v : a.data()) {
    if (v > 1) throw Error(ErrorCode::schema, "association entries must be 0 or 1");
  }
  for (double v : alpha.data()) {
    if (!(v > 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::schema, "alpha entries must lie in (0, 1]");
    }
  }
}

Matrix<double> sinr_matrix(const NetworkInstance& instance,
                           const std::vector<std::uint8_t>& station_on) {
  const auto& gains = instance.gains();
  const std::size_t nb = instance.n_stations();
  const std::size_t nk = instance.n_receivers();
  const double noise = instance.decoding().noise_power_w();
  const double g = instance.decoding().gain;

  std::vector<double> total(nk, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    if (!station_on[b]) continue;
    for (std::size_t k = 0; k < nk; ++k) total[k] += gains(b, k);
  }
  Matrix<double> out(nb, nk, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    if (!station_on[b]) continue;
    for (std::size_t k = 0; k < nk; ++k) {
      const double interference = std::max(0.0, total[k] - gains(b, k));
      out(b, k) = g * gains(b, k) / (noise + interference);
    }
  }
  return out;
}

double sinr(const NetworkInstance& instance, const Assignment& assignment,
            std::size_t b, std::size_t k) {
  const auto on = assignment.station_on();
  return hetnet::sinr(instance.gains(), instance.decoding(), on, b, k);
}

std::pair<double, double> power_terms(const NetworkInstance& instance,
                                      const Assignment& assignment) {
  const auto on = assignment.station_on();
  const auto rho = assignment.load();
  double sf = 0.0;
  double tx = 0.0;
  for (std::size_t b = 0; b < instance.n_stations(); ++b) {
    const auto& p = instance.stations()[b].params;
    const double on_b = on[b] ? 1.0 : 0.0;
    sf += p.support_power_w * (p.phi_sf * on_b + (1.0 - p.phi_sf) * rho[b]);
    tx += p.tx_budget_w * (p.phi_tx * on_b + (1.0 - p.phi_tx) * rho[b]);
  }
  return {sf, tx};
}

EvaluationReport evaluate(const NetworkInstance& instance, const Assignment& assignment) {
  const std::size_t nb = instance.n_stations();
  const std::size_t nk = instance.n_receivers();
  const auto& dec = instance.decoding();
  const auto& gains = instance.gains();
  const double beta = dec.beta_linear();
  const double cap_bound = 1.0 + dec.gain / dec.cap_beta_value();
  const double noise = dec.noise_power_w();
  const double eta = instance.eta();

  // Per-receiver accumulators: received total, supply, surplus, count.
  std::vector<double> scratch(4 * nk, 0.0);
  const auto total = std::span(scratch).subspan(0, nk);
  const auto supply = std::span(scratch).subspan(nk, nk);
  const auto surplus = std::span(scratch).subspan(2 * nk, nk);
  const auto count = std::span(scratch).subspan(3 * nk, nk);

  const auto on = assignment.station_on();
  for (std::size_t b = 0; b < nb; ++b) {
    if (!on[b]) continue;
    for (std::size_t k = 0; k < nk; ++k) total[k] += gains(b, k);
  }

  EvaluationReport report;
  auto& v = report.violations;
  for (std::size_t b = 0; b < nb; ++b) {
    if (!on[b]) continue;
    double rho = 0.0;
    for (std::size_t k = 0; k < nk; ++k) {
      if (!assignment.a(b, k)) continue;
      const double r = gains(b, k);
      const double s = dec.gain * r / (noise + std::max(0.0, total[k] - r));
      if (!can_decode(s, beta)) ++v.decode;
      const double c = capacity(s, dec.narrowband_hz);
      const double alpha = assignment.alpha(b, k);
      rho += alpha;
      supply[k] += alpha * c;
      surplus[k] += (alpha - eta) * c;
      count[k] += 1.0;
    }
    if (rho > 1.0 + kConstraintRelTol) ++v.time_budget;
    const auto& p = instance.stations()[b].params;
    report.support_power_w += p.support_power_w * (p.phi_sf + (1.0 - p.phi_sf) * rho);
    report.tx_power_w += p.tx_budget_w * (p.phi_tx + (1.0 - p.phi_tx) * rho);
  }
  for (std::size_t k = 0; k < nk; ++k) {
    const double d = instance.demands_bps()[k];
    if (!(count[k] < cap_bound)) ++v.assoc_cap;
    if (supply[k] < d * (1.0 - kConstraintRelTol)) ++v.demand;
    if (surplus[k] > d * (1.0 + kConstraintRelTol)) ++v.surplus_cap;
  }

  report.raw_power_w = report.support_power_w + report.tx_power_w;
  report.v_total = v.total();
  report.penalized_power_w =
      report.raw_power_w + static_cast<double>(report.v_total) * instance.p_viol_w();
  report.feasible = v.hard() == 0;
  return report;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"0m12p", "1m12p", "2m12p", "3m12p", "3m0p"};
  return names;
}

std::string Scenario::label() const {
  if (const auto* name = std::get_if<std::string>(&spec)) return *name;
  std::string out = "forbid:";
  const auto& ids = std::get<std::vector<std::size_t>>(spec);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

std::vector<std::size_t> forbidden_stations(const NetworkInstance& instance,
                                            const Scenario& scenario) {
  if (const auto* ids = std::get_if<std::vector<std::size_t>>(&scenario.spec)) {
    for (auto id : *ids) {
      if (id >= instance.n_stations()) {
        throw Error(ErrorCode::invalid_argument, "forbidden station id out of range");
      }
    }
    return *ids;
  }
  const auto& name = std::get<std::string>(scenario.spec);
  std::size_t macros_allowed = 0;
  bool picos_allowed = true;
  if (name == "0m12p") {
    macros_allowed = 0;
  } else if (name == "1m12p") {
    macros_allowed = 1;
  } else if (name == "2m12p") {
    macros_allowed = 2;
  } else if (name == "3m12p") {
    macros_allowed = 3;
  } else if (name == "3m0p") {
    macros_allowed = 3;
    picos_allowed = false;
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown scenario '" + name + "'");
  }

  std::vector<std::size_t> forbidden;
  std::size_t macro_seen = 0;
  for (std::size_t b = 0; b < instance.n_stations(); ++b) {
    if (instance.stations()[b].params.cls == StationClass::macro) {
      if (macro_seen++ >= macros_allowed) forbidden.push_back(b);
    } else if (!picos_allowed) {
      forbidden.push_back(b);
    }
  }
  return forbidden;
}

NetworkInstance apply_scenario(const NetworkInstance& instance, const Scenario& scenario) {
  auto stations = instance.stations();
  for (auto b : forbidden_stations(instance, scenario)) stations[b].params.tx_budget_w = 0.0;
  return NetworkInstance(std::move(stations), instance.receivers(), instance.demands_bps(),
                         instance.decoding(), instance.eta());
}

}  // namespace hetnet
