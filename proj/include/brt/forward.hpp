#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "brt/geometry.hpp"
#include "brt/phantoms.hpp"

namespace brt {

enum class DataKind { Single, Differential };

/// Samples ψ(w_j, Δ_n) with w_j = w_min + j·h and Δ_n = n·h, h = Δmax/N.
/// Stored w-fastest: values[n·n_w + j].
struct DataFunction {
  DataKind kind = DataKind::Single;
  int N = 0;
  std::size_t n_w = 0;
  double w_min = 0.0;
  double h = 0.0;
  double L = 1.0;
  double theta = 0.0;
  std::vector<double> values;

  DataFunction() = default;
  DataFunction(DataKind kind, int N, std::size_t n_w, double w_min, const SlabGeometry& geom);

  std::size_t n_delta() const { return static_cast<std::size_t>(N) + 1; }
  double w(std::size_t j) const { return w_min + static_cast<double>(j) * h; }
  double delta(std::size_t n) const { return static_cast<double>(n) * h; }
  double w_max() const { return w(n_w - 1); }

  double& at(std::size_t j, std::size_t n) { return values[n * n_w + j]; }
  double at(std::size_t j, std::size_t n) const { return values[n * n_w + j]; }

  /// ψ at an arbitrary w on row n, linear between samples and zero outside
  /// the window. Only meaningful for fluctuation data with compact support.
  double interp_w(double w, std::size_t n) const;

  bool same_grid(const DataFunction& other) const;
};

/// Source positions sampled for N steps: the image window extended by Δmax
/// on the side(s) from which rays can reach it. Differential data needs both
/// sides because family-B rays run towards -y.
struct WindowSpec {
  double w_min = 0.0;
  std::size_t n_w = 0;
};
WindowSpec data_window(const SlabGeometry& geom, int N, DataKind kind);

enum class ForwardMethod {
  Quadrature, ///< composite Simpson along each leg, split at square edges
  Analytic,   ///< closed forms: erf for Gaussians, clipped lengths for squares
};

struct ForwardOptions {
  double quad_step = 0.0; ///< maximum Simpson panel; 0 selects h/4
  ForwardMethod method = ForwardMethod::Quadrature;
};

/// Composite Simpson along a straight leg from (y0, z0) in direction (dy, dz),
/// |(dy, dz)| = 1, of length `length`, with panels no longer than `step`.
template <class Field>
double segment_integral(const Field& mu, double y0, double z0, double dy, double dz,
                        double length, double step) {
  if (length <= 0.0) return 0.0;
  const auto panels = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(length / step - 1e-12)));
  const double width = length / static_cast<double>(panels);
  double ends = mu(y0, z0) + mu(y0 + length * dy, z0 + length * dz);
  double mids = 0.0;
  double joints = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double s = (static_cast<double>(p) + 0.5) * width;
    mids += mu(y0 + s * dy, z0 + s * dz);
    if (p + 1 < panels) {
      const double e = static_cast<double>(p + 1) * width;
      joints += mu(y0 + e * dy, z0 + e * dz);
    }
  }
  return (ends + 4.0 * mids + 2.0 * joints) * width / 6.0;
}

/// segment_integral applied piecewise between the `breaks`. Piece ends,
/// including the leg ends, are pulled in by a relative 1e-13 so a jump sitting
/// on a piece end is sampled from the inside.
template <class Field>
double split_segment_integral(const Field& mu, double y0, double z0, double dy, double dz,
                              double length, double step, std::vector<double> breaks) {
  std::sort(breaks.begin(), breaks.end());
  breaks.push_back(length);
  const double inset = 1e-13 * std::max(1.0, length);
  double sum = 0.0;
  double from = 0.0;
  for (const double to : breaks) {
    if (to - from > 2.0 * inset) {
      const double a = from + inset;
      sum += segment_integral(mu, y0 + a * dy, z0 + a * dz, dy, dz, to - from - 2.0 * inset, step);
    }
    from = std::max(from, to);
  }
  return sum;
}

/// ∫ μ dℓ along both legs of `ray`. `mu` is any callable (y, z) -> double.
template <class Field>
double broken_ray_integral(const Field& mu, const BrokenRay& ray, const SlabGeometry& geom,
                           double quad_step) {
  check_ray(ray, geom);
  const auto [l1, l2] = segment_lengths(ray.delta, geom);
  const double side = ray.family == RayFamily::A ? 1.0 : -1.0;
  return segment_integral(mu, ray.w, 0.0, 0.0, 1.0, l1, quad_step) +
         segment_integral(mu, ray.w, l1, side * std::sin(geom.theta()), std::cos(geom.theta()),
                          l2, quad_step);
}

/// Closed-form ∫ μ dℓ for the analytic phantom shapes.
double analytic_ray_integral(const MediumModel& model, Coefficient which, const BrokenRay& ray,
                             const SlabGeometry& geom);

/// ψ(w, Δ) = ∫_BR μ_t dℓ for a medium whose scattering is uniform.
/// Throws PreconditionError if the model has scattering inhomogeneities.
DataFunction simulate_uniform(const MediumModel& model, const SlabGeometry& geom, int N,
                              const WindowSpec& window, const ForwardOptions& options = {});

/// φ = ∫_BR μ_t dℓ - ln(μ_s(R) / μ̄_s) for the chosen family.
/// Throws DomainError if μ_s <= 0 at a vertex.
DataFunction simulate_full(const MediumModel& model, const SlabGeometry& geom, RayFamily family,
                           int N, const WindowSpec& window, const ForwardOptions& options = {});

/// ψ_d = φ_a - φ_b. Throws DomainError if the grids differ.
DataFunction differential(const DataFunction& phi_a, const DataFunction& phi_b);

/// δψ = ψ - μ̄_t (L1 + L2) for single-family data; differential data has no
/// background term and is returned unchanged.
DataFunction subtract_background(const DataFunction& data, double bar_mu_t);

SlabGeometry geometry_of(const DataFunction& data, double y_min, double y_max);

} // namespace brt
