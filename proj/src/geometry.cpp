#include "brt/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "brt/errors.hpp"

namespace brt {

namespace {
// Tolerate rounding in Δ = n·h at the last node.
constexpr double kEdgeSlack = 1e-12;

double clamp_delta(double delta, double delta_max) {
  if (!(delta >= -kEdgeSlack * delta_max && delta <= delta_max * (1.0 + kEdgeSlack))) {
    throw DomainError("delta " + std::to_string(delta) + " outside [0, " +
                      std::to_string(delta_max) + "]");
  }
  return std::clamp(delta, 0.0, delta_max);
}
} // namespace

SlabGeometry::SlabGeometry(double L, double theta, double y_min, double y_max)
    : L_(L), theta_(theta), y_min_(y_min), y_max_(y_max) {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("slab depth must be positive");
  if (!(theta > 0.0 && theta < std::numbers::pi / 2)) {
    throw DomainError("detection angle must lie in (0, pi/2)");
  }
  if (!(y_min < y_max)) throw DomainError("scan window requires y_min < y_max");
}

SegmentLengths segment_lengths(double delta, const SlabGeometry& geom) {
  const double dmax = geom.delta_max();
  const double t = clamp_delta(delta, dmax) / dmax;
  return {geom.L() * (1.0 - t), t * std::hypot(geom.L(), dmax)};
}

RayOffset ray_point(double delta, double ell, const SlabGeometry& geom) {
  const auto [l1, l2] = segment_lengths(delta, geom);
  const double total = l1 + l2;
  if (!(ell >= -kEdgeSlack * total && ell <= total * (1.0 + kEdgeSlack))) {
    throw DomainError("arc length outside the ray");
  }
  ell = std::clamp(ell, 0.0, total);
  if (ell <= l1) return {0.0, ell};
  const double s = ell - l1;
  return {s * std::sin(geom.theta()), l1 + s * std::cos(geom.theta())};
}

void check_ray(const BrokenRay& ray, const SlabGeometry& geom) {
  clamp_delta(ray.delta, geom.delta_max());
}

Point vertex(const BrokenRay& ray, const SlabGeometry& geom) {
  return {ray.w, segment_lengths(ray.delta, geom).first};
}

} // namespace brt
