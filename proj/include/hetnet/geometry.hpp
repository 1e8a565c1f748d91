#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hetnet/common.hpp"

namespace hetnet {

/// Half-open angular interval [begin_deg, end_deg), angles in degrees.
/// end_deg may exceed 360 when the interval wraps.
struct Sector {
  double begin_deg = 0.0;
  double end_deg = 0.0;

  bool contains(double angle_deg) const;

  friend bool operator==(const Sector&, const Sector&) = default;
};

using SectorSet = std::array<Sector, 3>;

/// Macrocell sectors with boundaries at 90, 210 and 330 degrees.
/// Sector 0 is the upper right one, sector 1 the upper left, sector 2 the
/// bottom one.
SectorSet default_sectors();

/// Golden angle (3 - sqrt 5) * pi, in radians.
double golden_angle_rad();

struct PlacementSpec {
  double region_radius_km = 0.3;
  std::size_t n_pico = 12;
  std::size_t n_receivers = 51;
  bool balance_sectors = true;

  static constexpr std::size_t n_macro = 3;

  void validate() const;

  friend bool operator==(const PlacementSpec&, const PlacementSpec&) = default;
};

struct Layout {
  double region_radius_km = 0.0;
  SectorSet sectors{};
  std::array<Point, 3> macro_positions{};
  std::vector<Point> pico_positions;
  std::vector<Point> receiver_positions;
  double pico_rotation_deg = 0.0;
  double receiver_rotation_deg = 0.0;
};

/// Sunflower-head placement: r_i = sqrt(i / n) R and theta_i = i * golden
/// angle for i = 1..n.
std::vector<Point> sunflower_positions(std::size_t n_loc, double radius_km);

/// Polar angle in [0, 360). Throws undefined_angle for the origin.
double polar_angle_deg(const Point& p);

std::size_t sector_of(const Point& p, const SectorSet& sectors);

std::array<std::size_t, 3> sector_counts(const std::vector<Point>& points,
                                         const SectorSet& sectors);

Point rotate(const Point& p, double angle_deg);

struct RotationResult {
  std::vector<Point> points;
  double angle_deg = 0.0;
};

/// Scans rotation angles k * 0.01 degrees, k = 0, 1, ..., and returns the
/// first one leaving every sector with exactly count / 3 points.
RotationResult rotate_for_equal_sectors(const std::vector<Point>& points,
                                        const SectorSet& sectors);

Layout build_layout(const PlacementSpec& spec);

}  // namespace hetnet
