#include "sinrnc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sinrnc/errors.hpp"

namespace sinrnc::geometry {

namespace {

double wrapped_delta(double a, double b) noexcept {
  const double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

}  // namespace

double torus_distance_squared(const Point& a, const Point& b) noexcept {
  const double dx = wrapped_delta(a.x, b.x);
  const double dy = wrapped_delta(a.y, b.y);
  return dx * dx + dy * dy;
}

double torus_distance(const Point& a, const Point& b) noexcept {
  return std::sqrt(torus_distance_squared(a, b));
}

PathLossModel::PathLossModel(double c, double alpha, double d0)
    : c_(c), alpha_(alpha), d0_(d0), d0_squared_(d0 * d0), cubic_(alpha == 3.0) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ConfigError("path loss: c must be positive and finite");
  }
  if (!(alpha > 2.0 && alpha < 4.0)) {
    throw ConfigError("path loss: exponent must lie in (2, 4), got " +
                      std::to_string(alpha));
  }
  if (!(d0 >= 0.0) || !std::isfinite(d0)) {
    throw ConfigError("path loss: d0 must be finite and >= 0");
  }
}

double PathLossModel::operator()(double x) const {
  if (!(x >= 0.0)) throw DomainError("path loss: negative distance");
  if (x == 0.0 && d0_ == 0.0) {
    throw DomainError("path loss: L(0) is infinite without a near-field clamp");
  }
  return c_ * std::pow(std::max(x, d0_), -alpha_);
}

double PathLossModel::from_squared(double x2) const noexcept {
  x2 = std::max(x2, d0_squared_);
  if (cubic_) return c_ / (x2 * std::sqrt(x2));
  return c_ * std::pow(x2, -0.5 * alpha_);
}

double PathLossModel::peak() const noexcept {
  if (d0_ == 0.0) return std::numeric_limits<double>::infinity();
  return c_ * std::pow(d0_, -alpha_);
}

double PathLossModel::inverse(double y) const {
  if (!(y > 0.0)) throw DomainError("inverse path loss: attenuation must be > 0");
  if (y > peak() * (1.0 + 1e-12)) {
    throw DomainError("inverse path loss: " + std::to_string(y) +
                      " exceeds L(d0) = " + std::to_string(peak()));
  }
  return std::max(std::pow(c_ / y, 1.0 / alpha_), d0_);
}

double path_loss(const PathLossModel& model, double x) { return model(x); }

double inverse_path_loss(const PathLossModel& model, double y) {
  return model.inverse(y);
}

std::vector<Point> sample_nodes(const PlacementModel& placement, Seed seed) {
  if (placement.n < 2) throw ConfigError("placement: need n >= 2");
  Rng rng(seed);
  std::size_t count = placement.n;
  if (placement.mode == PlacementMode::kPoissonCount) {
    const std::size_t floor = std::max<std::size_t>(2, placement.min_count);
    std::poisson_distribution<std::size_t> poisson(static_cast<double>(placement.n));
    do {
      count = poisson(rng);
    } while (count < floor);
  }
  std::vector<Point> points(count);
  for (auto& p : points) {
    p.x = uniform01(rng);
    p.y = uniform01(rng);
  }
  return points;
}

}  // namespace sinrnc::geometry
