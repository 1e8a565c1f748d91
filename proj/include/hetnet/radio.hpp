#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hetnet/common.hpp"
#include "hetnet/geometry.hpp"

namespace hetnet {

enum class StationClass { macro, pico };

const char* to_string(StationClass cls);
StationClass station_class_from_string(const std::string& name);

/// Per-station power model. Support-function and transmission budgets each
/// split into a fixed share (spent while on) and a load-proportional share.
struct BaseStationParams {
  StationClass cls = StationClass::pico;
  double path_loss_db = 140.7;
  double tau = 3.67;
  double support_power_w = 28.0;
  double phi_sf = 0.5;
  double tx_budget_w = 5.0;
  double phi_tx = 0.8;

  /// Radiated power P_tx (1 - phi_tx).
  double transmit_power_w() const { return tx_budget_w - tx_budget_w * phi_tx; }
  /// Power drawn while on, independent of load.
  double idle_power_w() const { return support_power_w * phi_sf + tx_budget_w * phi_tx; }
  /// Additional power per unit of time-share load.
  double load_power_w() const {
    return (support_power_w - support_power_w * phi_sf) + (tx_budget_w - tx_budget_w * phi_tx);
  }

  void validate() const;

  static BaseStationParams macro_defaults();
  static BaseStationParams pico_defaults();

  friend bool operator==(const BaseStationParams&, const BaseStationParams&) = default;
};

/// Which beta feeds the per-receiver association cap.
enum class CapBeta { linear, decibel };

struct DecodingParams {
  double gamma0_w_per_hz = 1.174e-20;
  double beta_db = 5.0;
  double narrowband_hz = 10e6;
  double gain = 128.0;
  CapBeta cap_beta = CapBeta::linear;

  double wideband_hz() const { return narrowband_hz * gain; }
  double beta_linear() const;
  double noise_power_w() const { return gamma0_w_per_hz * wideband_hz(); }
  /// Beta value on the right-hand side of the association cap.
  double cap_beta_value() const { return cap_beta == CapBeta::linear ? beta_linear() : beta_db; }

  void validate() const;

  friend bool operator==(const DecodingParams&, const DecodingParams&) = default;
};

/// A base station with its location. Macrocells radiate only inside their
/// sector; a station without a sector is omnidirectional.
struct StationSite {
  BaseStationParams params;
  Point position;
  std::optional<Sector> sector;

  friend bool operator==(const StationSite&, const StationSite&) = default;
};

/// Received power R(b, k) in watts.
using GainMatrix = Matrix<double>;

/// P_b 10^(-L/10) d^(-tau). Throws co_located_singularity for d = 0.
double received_power(double transmit_power_w, double path_loss_db, double tau, double d_km);

/// G R_bk / (noise + sum of R_b'k over the other stations that are on).
/// Returns 0 when station b itself is off.
double sinr(const GainMatrix& gains, const DecodingParams& decoding,
            std::span<const std::uint8_t> station_on, std::size_t b, std::size_t k);

inline bool can_decode(double sinr_lin, double beta_lin) { return sinr_lin >= beta_lin; }

double capacity(double sinr_lin, double narrowband_hz);

/// Largest integer strictly below 1 + G / beta.
int n_max(double gain, double beta);

GainMatrix build_gain_matrix(const std::vector<StationSite>& stations,
                             const std::vector<Point>& receivers);

/// Stations for a layout: the three macrocells first (station b covers
/// sector b), then the picocells in layout order.
std::vector<StationSite> stations_from_layout(const Layout& layout,
                                              const BaseStationParams& macro,
                                              const BaseStationParams& pico);

}  // namespace hetnet
