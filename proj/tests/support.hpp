#pragma once

// Test-only instance builders.

#include <cmath>
#include <random>
#include <vector>

#include "hetnet/config.hpp"
#include "hetnet/problem.hpp"

namespace hetnet::testing {

inline NetworkInstance fig1_instance(double demand_mbps) {
  return build_instance(Config{}, demand_mbps);
}

/// One omnidirectional station per entry of `station_positions`, default
/// picocell parameters, uniform demand.
inline NetworkInstance pico_instance(const std::vector<Point>& station_positions,
                                     const std::vector<Point>& receivers, double demand_mbps,
                                     double eta = 0.005) {
  std::vector<StationSite> stations;
  for (const auto& p : station_positions) {
    stations.push_back({BaseStationParams::pico_defaults(), p, std::nullopt});
  }
  return NetworkInstance(stations, receivers, std::vector<double>(receivers.size(), demand_mbps * 1e6),
                         DecodingParams{}, eta);
}

/// Random desk-size instance: 1..max_b stations (picocells, plus with
/// probability 1/3 a full-circle macrocell at the origin) and 1..max_k
/// receivers in a disc of radius 0.3 km, demand uniform in [1, max_mbps].
inline NetworkInstance random_tiny_instance(std::mt19937_64& rng, std::size_t max_b,
                                            std::size_t max_k, double max_mbps) {
  std::uniform_int_distribution<std::size_t> nb_dist(1, max_b);
  std::uniform_int_distribution<std::size_t> nk_dist(1, max_k);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto in_disc = [&](double radius) {
    const double r = radius * std::sqrt(0.05 + 0.95 * unit(rng));
    const double t = 2.0 * 3.14159265358979323846 * unit(rng);
    return Point{r * std::cos(t), r * std::sin(t)};
  };
  const std::size_t nb = nb_dist(rng);
  const std::size_t nk = nk_dist(rng);
  std::vector<StationSite> stations;
  for (std::size_t b = 0; b < nb; ++b) {
    if (b == 0 && unit(rng) < 1.0 / 3.0) {
      stations.push_back({BaseStationParams::macro_defaults(), Point{}, std::nullopt});
    } else {
      stations.push_back({BaseStationParams::pico_defaults(), in_disc(0.3), std::nullopt});
    }
  }
  std::vector<Point> receivers;
  for (std::size_t k = 0; k < nk; ++k) receivers.push_back(in_disc(0.3));
  std::vector<double> demands(nk, (1.0 + (max_mbps - 1.0) * unit(rng)) * 1e6);
  return NetworkInstance(stations, receivers, demands, DecodingParams{}, 0.005);
}

}  // namespace hetnet::testing
