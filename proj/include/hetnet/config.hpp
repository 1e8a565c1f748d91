#pragma once

#include <optional>
#include <string>

#include "hetnet/brkga.hpp"
#include "hetnet/geometry.hpp"
#include "hetnet/problem.hpp"
#include "hetnet/radio.hpp"

namespace hetnet {

/// Everything needed to build an instance and run the solver. Defaults
/// reproduce the reference setup: R = 0.3 km, 3 macrocells + 12 picocells,
/// 51 receivers, the macro/pico power models, gamma0 = 1.174e-20 W/Hz,
/// beta = 5 dB, N = 10 MHz, G = 128, eta = 0.005 and the GA defaults.
struct Config {
  PlacementSpec placement;
  BaseStationParams macro = BaseStationParams::macro_defaults();
  BaseStationParams pico = BaseStationParams::pico_defaults();
  DecodingParams decoding;
  double eta = 0.005;
  GaParams ga;
  std::string scenario = "3m12p";
  double demand_mbps = 12.0;

  friend bool operator==(const Config&, const Config&) = default;
};

/// Unmasked instance for the configured layout, every demand set to
/// demand_mbps.
NetworkInstance build_instance(const Config& config, const Layout& layout, double demand_mbps);
NetworkInstance build_instance(const Config& config, double demand_mbps);

/// build_instance followed by the configured scenario mask.
NetworkInstance build_scenario_instance(const Config& config);

}  // namespace hetnet
