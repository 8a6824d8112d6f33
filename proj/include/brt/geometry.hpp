#pragma once

#include <cmath>

namespace brt {

/// Normal-incidence slab geometry: sources on the face z = 0, the ray turns
/// once inside 0 < z < L and leaves through z = L at angle theta to the
/// incident direction.
class SlabGeometry {
public:
  /// Throws DomainError unless L > 0, 0 < theta < pi/2 and y_min < y_max.
  SlabGeometry(double L, double theta, double y_min, double y_max);

  double L() const { return L_; }
  double theta() const { return theta_; }
  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }

  /// Largest source-detector separation whose vertex is still in the slab.
  double delta_max() const { return L_ * std::tan(theta_); }

private:
  double L_;
  double theta_;
  double y_min_;
  double y_max_;
};

/// Side of the source towards which the second leg is detected. Family A
/// is detected at +Δ; family B is its mirror image and shares every vertex.
enum class RayFamily { A, B };

/// One broken ray, identified by source position w and separation Δ.
struct BrokenRay {
  double w = 0.0;
  double delta = 0.0;
  RayFamily family = RayFamily::A;
};

struct SegmentLengths {
  double first = 0.0;  ///< L1, along the incident direction
  double second = 0.0; ///< L2, from the vertex to the exit face
};

struct RayOffset {
  double eta = 0.0;  ///< transverse offset from the source
  double zeta = 0.0; ///< depth
};

struct Point {
  double y = 0.0;
  double z = 0.0;
};

/// L1 = L(1 - Δ/Δmax), L2 = (Δ/Δmax) sqrt(L² + Δmax²).
/// Throws DomainError for Δ outside [0, Δmax].
SegmentLengths segment_lengths(double delta, const SlabGeometry& geom);

/// Position along a family-A ray at arc length ell, relative to its source.
/// The vertex ell = L1 belongs to the first leg. Throws DomainError when
/// ell lies outside [0, L1 + L2].
RayOffset ray_point(double delta, double ell, const SlabGeometry& geom);

/// Turning point R = (w, L1(Δ)); identical for both families.
Point vertex(const BrokenRay& ray, const SlabGeometry& geom);

/// Throws DomainError unless 0 <= ray.delta <= Δmax.
void check_ray(const BrokenRay& ray, const SlabGeometry& geom);

} // namespace brt
