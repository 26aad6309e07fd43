#pragma once

#include <cstddef>
#include <vector>

#include "sinrnc/random.hpp"

namespace sinrnc::geometry {

// Location on the unit torus [0,1)^2.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Largest possible distance between two points on the unit torus.
inline constexpr double kMaxTorusDistance = 0.70710678118654752440;

double torus_distance(const Point& a, const Point& b) noexcept;
double torus_distance_squared(const Point& a, const Point& b) noexcept;

/// Signal attenuation L(x) = c * max(x, d0)^(-alpha).
///
/// The clamp at d0 keeps every moment of L finite over the torus; d0 = 0
/// recovers the unclamped power law, which is singular at the origin.
class PathLossModel {
 public:
  PathLossModel(double c, double alpha, double d0);

  double c() const noexcept { return c_; }
  double alpha() const noexcept { return alpha_; }
  double d0() const noexcept { return d0_; }

  // Throws DomainError for negative x, or x == 0 when d0 == 0.
  double operator()(double x) const;

  // Same as operator() but takes the squared distance; no validation.
  double from_squared(double x2) const noexcept;

  // Unique x >= d0 with L(x) = y. Requires 0 < y <= L(d0).
  double inverse(double y) const;

  // L(d0), or +inf when d0 == 0.
  double peak() const noexcept;

 private:
  double c_;
  double alpha_;
  double d0_;
  double d0_squared_;
  bool cubic_;
};

double path_loss(const PathLossModel& model, double x);
double inverse_path_loss(const PathLossModel& model, double y);

enum class PlacementMode { kFixedCount, kPoissonCount };

struct PlacementModel {
  PlacementMode mode = PlacementMode::kFixedCount;
  std::size_t n = 2;
  // Poisson mode keeps redrawing the count until it reaches this value
  // (never below 2).
  std::size_t min_count = 2;
};

// i.i.d. uniform points on the torus; deterministic in `seed`.
std::vector<Point> sample_nodes(const PlacementModel& placement, Seed seed);

}  // namespace sinrnc::geometry
