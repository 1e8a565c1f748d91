#include "hetnet/radio.hpp"

#include <cmath>
#include <string>

namespace hetnet {

const char* to_string(StationClass cls) {
  return cls == StationClass::macro ? "macro" : "pico";
}

StationClass station_class_from_string(const std::string& name) {
  if (name == "macro") return StationClass::macro;
  if (name == "pico") return StationClass::pico;
  throw Error(ErrorCode::schema, "unknown station class '" + name + "'");
}

void BaseStationParams::validate() const {
  if (!(tau > 2.0)) throw Error(ErrorCode::invalid_argument, "decay exponent tau must exceed 2");
  if (support_power_w < 0.0 || tx_budget_w < 0.0) {
    throw Error(ErrorCode::invalid_argument, "power budgets must be non-negative");
  }
  if (phi_sf < 0.0 || phi_sf > 1.0 || phi_tx < 0.0 || phi_tx > 1.0) {
    throw Error(ErrorCode::invalid_argument, "power fractions must lie in [0, 1]");
  }
}

BaseStationParams BaseStationParams::macro_defaults() {
  return {StationClass::macro, 128.1, 3.76, 235.0, 0.85, 265.0, 0.85};
}

BaseStationParams BaseStationParams::pico_defaults() {
  return {StationClass::pico, 140.7, 3.67, 28.0, 0.5, 5.0, 0.8};
}

double DecodingParams::beta_linear() const { return std::pow(10.0, beta_db / 10.0); }

void DecodingParams::validate() const {
  if (!(gamma0_w_per_hz > 0.0)) throw Error(ErrorCode::invalid_argument, "gamma0 must be positive");
  if (!(narrowband_hz > 0.0)) throw Error(ErrorCode::invalid_argument, "narrowband N must be positive");
  if (!(gain > 0.0)) throw Error(ErrorCode::invalid_argument, "processing gain G must be positive");
  if (!(beta_linear() > 1.0)) throw Error(ErrorCode::invalid_argument, "beta must exceed 1 (0 dB)");
}

double received_power(double transmit_power_w, double path_loss_db, double tau, double d_km) {
  if (d_km == 0.0) {
    throw Error(ErrorCode::co_located_singularity, "station and receiver are co-located");
  }
  if (!(d_km > 0.0)) throw Error(ErrorCode::invalid_argument, "distance must be positive");
  return transmit_power_w * std::pow(10.0, -path_loss_db / 10.0) * std::pow(d_km, -tau);
}

double sinr(const GainMatrix& gains, const DecodingParams& decoding,
            std::span<const std::uint8_t> station_on, std::size_t b, std::size_t k) {
  if (!station_on[b]) return 0.0;
  double interference = 0.0;
  for (std::size_t other = 0; other < gains.rows(); ++other) {
    if (other != b && station_on[other]) interference += gains(other, k);
  }
  return decoding.gain * gains(b, k) / (decoding.noise_power_w() + interference);
}

double capacity(double sinr_lin, double narrowband_hz) {
  return narrowband_hz * std::log2(1.0 + sinr_lin);
}

int n_max(double gain, double beta) {
  const double bound = 1.0 + gain / beta;
  const double fl = std::floor(bound);
  return static_cast<int>(fl == bound ? fl - 1.0 : fl);
}

GainMatrix build_gain_matrix(const std::vector<StationSite>& stations,
                             const std::vector<Point>& receivers) {
  GainMatrix gains(stations.size(), receivers.size(), 0.0);
  for (std::size_t b = 0; b < stations.size(); ++b) {
    const auto& site = stations[b];
    const double p_b = site.params.transmit_power_w();
    for (std::size_t k = 0; k < receivers.size(); ++k) {
      const Point rel{receivers[k].x - site.position.x, receivers[k].y - site.position.y};
      const double d = std::hypot(rel.x, rel.y);
      if (d == 0.0) {
        throw Error(ErrorCode::co_located_singularity,
                    "receiver " + std::to_string(k) + " sits on station " + std::to_string(b));
      }
      if (site.sector && !site.sector->contains(polar_angle_deg(rel))) continue;
      if (p_b == 0.0) continue;
      gains(b, k) = received_power(p_b, site.params.path_loss_db, site.params.tau, d);
    }
  }
  return gains;
}

std::vector<StationSite> stations_from_layout(const Layout& layout,
                                              const BaseStationParams& macro,
                                              const BaseStationParams& pico) {
  std::vector<StationSite> stations;
  stations.reserve(3 + layout.pico_positions.size());
  for (std::size_t s = 0; s < 3; ++s) {
    stations.push_back({macro, layout.macro_positions[s], layout.sectors[s]});
  }
  for (const auto& p : layout.pico_positions) stations.push_back({pico, p, std::nullopt});
  return stations;
}

}  // namespace hetnet
