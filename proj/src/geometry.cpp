#include "hetnet/geometry.hpp"

#include <cmath>
#include <string>

namespace hetnet {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::balancing_failed: return "balancing-failed";
    case ErrorCode::undefined_angle: return "undefined-angle";
    case ErrorCode::co_located_singularity: return "co-located-singularity";
    case ErrorCode::refused_size: return "refused-size";
    case ErrorCode::schema: return "schema";
  }
  return "unknown";
}

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

bool Sector::contains(double angle_deg) const {
  double offset = std::fmod(angle_deg - begin_deg, 360.0);
  if (offset < 0.0) offset += 360.0;
  return offset < end_deg - begin_deg;
}

SectorSet default_sectors() {
  return {Sector{-30.0, 90.0}, Sector{90.0, 210.0}, Sector{210.0, 330.0}};
}

double golden_angle_rad() {
  const double s = std::sqrt(5.0) - 1.0;
  return s * s * kPi / 2.0;
}

void PlacementSpec::validate() const {
  if (!(region_radius_km > 0.0) || !std::isfinite(region_radius_km)) {
    throw Error(ErrorCode::invalid_argument, "region radius must be positive");
  }
  if (n_receivers == 0) {
    throw Error(ErrorCode::invalid_argument, "at least one receiver is required");
  }
  if (balance_sectors && (n_pico % 3 != 0 || n_receivers % 3 != 0)) {
    throw Error(ErrorCode::invalid_argument,
                "sector balancing needs pico and receiver counts divisible by 3");
  }
}

std::vector<Point> sunflower_positions(std::size_t n_loc, double radius_km) {
  if (n_loc == 0) {
    throw Error(ErrorCode::invalid_argument, "sunflower needs n_loc >= 1");
  }
  if (!(radius_km > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "sunflower needs R > 0");
  }
  const double delta = golden_angle_rad();
  std::vector<Point> points;
  points.reserve(n_loc);
  for (std::size_t i = 1; i <= n_loc; ++i) {
    const double r = std::sqrt(static_cast<double>(i) / static_cast<double>(n_loc)) * radius_km;
    const double theta = static_cast<double>(i) * delta;
    points.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  return points;
}

double polar_angle_deg(const Point& p) {
  if (p.x == 0.0 && p.y == 0.0) {
    throw Error(ErrorCode::undefined_angle, "polar angle of the origin is undefined");
  }
  double deg = rad_to_deg(std::atan2(p.y, p.x));
  if (deg < 0.0) deg += 360.0;
  if (deg >= 360.0) deg -= 360.0;
  return deg;
}

std::size_t sector_of(const Point& p, const SectorSet& sectors) {
  const double angle = polar_angle_deg(p);
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    if (sectors[s].contains(angle)) return s;
  }
  throw Error(ErrorCode::invalid_argument, "sectors do not cover angle " + std::to_string(angle));
}

std::array<std::size_t, 3> sector_counts(const std::vector<Point>& points,
                                         const SectorSet& sectors) {
  std::array<std::size_t, 3> counts{};
  for (const auto& p : points) ++counts[sector_of(p, sectors)];
  return counts;
}

Point rotate(const Point& p, double angle_deg) {
  const double a = deg_to_rad(angle_deg);
  const double c = std::cos(a);
  const double s = std::sin(a);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

RotationResult rotate_for_equal_sectors(const std::vector<Point>& points,
                                        const SectorSet& sectors) {
  if (points.size() % 3 != 0) {
    throw Error(ErrorCode::invalid_argument, "point count must be a multiple of 3");
  }
  for (const auto& p : points) {
    if (p.x == 0.0 && p.y == 0.0) {
      throw Error(ErrorCode::undefined_angle, "cannot balance a point at the origin");
    }
  }
  const std::size_t target = points.size() / 3;
  constexpr int kSteps = 36000;  // 0.01 degree resolution

  std::vector<Point> rotated(points.size());
  for (int step = 0; step < kSteps; ++step) {
    const double angle = static_cast<double>(step) / 100.0;
    std::array<std::size_t, 3> counts{};
    for (std::size_t i = 0; i < points.size(); ++i) {
      rotated[i] = step == 0 ? points[i] : rotate(points[i], angle);
      ++counts[sector_of(rotated[i], sectors)];
    }
    if (counts[0] == target && counts[1] == target && counts[2] == target) {
      return {rotated, angle};
    }
  }
  throw Error(ErrorCode::balancing_failed, "no balancing rotation found in a full turn");
}

Layout build_layout(const PlacementSpec& spec) {
  spec.validate();
  Layout layout;
  layout.region_radius_km = spec.region_radius_km;
  layout.sectors = default_sectors();
  layout.macro_positions = {Point{}, Point{}, Point{}};

  if (spec.n_pico > 0) {
    auto picos = sunflower_positions(spec.n_pico, spec.region_radius_km);
    if (spec.balance_sectors) {
      auto balanced = rotate_for_equal_sectors(picos, layout.sectors);
      layout.pico_positions = std::move(balanced.points);
      layout.pico_rotation_deg = balanced.angle_deg;
    } else {
      layout.pico_positions = std::move(picos);
    }
  }

  auto receivers = sunflower_positions(spec.n_receivers, spec.region_radius_km);
  if (spec.balance_sectors) {
    auto balanced = rotate_for_equal_sectors(receivers, layout.sectors);
    layout.receiver_positions = std::move(balanced.points);
    layout.receiver_rotation_deg = balanced.angle_deg;
  } else {
    layout.receiver_positions = std::move(receivers);
  }
  return layout;
}

}  // namespace hetnet
