#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "nfp/errors.hpp"
#include "nfp/rng.hpp"

namespace nfp {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Ground position plus altitude above ground.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;
  friend bool operator==(const Point3&, const Point3&) = default;
};

/// Parameters of a hard-core process on the square [0, area_side]^2.
/// `intensity` is the parent Poisson intensity, before thinning.
struct HardCoreSpec {
  double area_side = 0.0;      // m
  double intensity = 0.0;      // points per m^2
  double min_separation = 0.0; // m

  void validate() const {
    if (!(area_side > 0.0) || !std::isfinite(area_side))
      throw config_error("hard-core spec: area_side must be positive");
    if (!(intensity >= 0.0) || !std::isfinite(intensity))
      throw config_error("hard-core spec: intensity must be non-negative");
    if (!(min_separation > 0.0) || !(min_separation < area_side))
      throw config_error("hard-core spec: min_separation must lie in (0, area_side)");
  }
};

/// Homogeneous Poisson process on the square. Count first, then (x, y) per point.
inline std::vector<Point2> poisson_points(const HardCoreSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  const double mean = spec.intensity * spec.area_side * spec.area_side;
  const auto n = rng.poisson(mean);
  std::vector<Point2> points;
  points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = rng.uniform(0.0, spec.area_side);
    const double y = rng.uniform(0.0, spec.area_side);
    points.push_back({x, y});
  }
  return points;
}

/// Matérn type-I thinning of a parent point list: every point with a neighbour strictly
/// closer than `min_separation` is removed, together with that neighbour. Order is kept.
inline std::vector<Point2> matern_thin(const std::vector<Point2>& parent, double min_separation) {
  const double r2 = min_separation * min_separation;
  std::vector<bool> doomed(parent.size(), false);
  for (std::size_t i = 0; i < parent.size(); ++i) {
    for (std::size_t j = i + 1; j < parent.size(); ++j) {
      const double dx = parent[i].x - parent[j].x;
      const double dy = parent[i].y - parent[j].y;
      if (dx * dx + dy * dy < r2) doomed[i] = doomed[j] = true;
    }
  }
  std::vector<Point2> kept;
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (!doomed[i]) kept.push_back(parent[i]);
  return kept;
}

/// Matérn type-I hard-core process: the Poisson parent for (spec, seed), thinned.
/// No edge correction; points near the border only compete with in-window neighbours.
inline std::vector<Point2> matern_type1(const HardCoreSpec& spec, std::uint64_t seed) {
  return matern_thin(poisson_points(spec, seed), spec.min_separation);
}

inline double horizontal_distance(const Point2& a, const Point3& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline double horizontal_distance(const Point3& a, const Point3& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// arctan(h / s); pi/2 when the hub is directly overhead.
inline double elevation_angle(const Point2& cell, const Point3& hub) {
  const double s = horizontal_distance(cell, hub);
  if (s == 0.0) return std::numbers::pi / 2.0;
  return std::atan(hub.h / s);
}

}  // namespace nfp
