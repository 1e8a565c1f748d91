#include "hetnet/config.hpp"

namespace hetnet {

NetworkInstance build_instance(const Config& config, const Layout& layout, double demand_mbps) {
  auto stations = stations_from_layout(layout, config.macro, config.pico);
  std::vector<double> demands(layout.receiver_positions.size(), demand_mbps * 1e6);
  return NetworkInstance(std::move(stations), layout.receiver_positions, std::move(demands),
                         config.decoding, config.eta);
}

NetworkInstance build_instance(const Config& config, double demand_mbps) {
  return build_instance(config, build_layout(config.placement), demand_mbps);
}

NetworkInstance build_scenario_instance(const Config& config) {
  return apply_scenario(build_instance(config, config.demand_mbps),
                        Scenario::named(config.scenario));
}

}  // namespace hetnet
