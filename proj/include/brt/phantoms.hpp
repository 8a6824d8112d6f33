#pragma once

#include <string>
#include <vector>

#include "brt/geometry.hpp"
#include "brt/grid.hpp"

namespace brt {

enum class Coefficient { Total, Scattering, Absorption };

enum class ShapeKind { Square, Gaussian };

/// A localized perturbation δμ. A square is the closed set
/// |y - y0| <= a/2, |z - z0| <= a/2 carrying `amplitude`; a Gaussian is
/// amplitude · exp(-((y - y0)² + (z - z0)²) / σ²).
struct Inhomogeneity {
  ShapeKind kind = ShapeKind::Gaussian;
  double y0 = 0.0;
  double z0 = 0.0;
  double side_length = 0.0; ///< square only
  double sigma = 0.0;       ///< Gaussian only
  double amplitude = 0.0;

  static Inhomogeneity square(double y0, double z0, double side, double amplitude);
  static Inhomogeneity gaussian(double y0, double z0, double sigma, double amplitude);

  double value(double y, double z) const;
  void validate() const;
};

/// Constant backgrounds plus absorbing and scattering inhomogeneities.
/// μ_t is always μ_s + μ_a, so only the two constituents are stored.
struct MediumModel {
  double bar_mu_s = 0.0;
  double bar_mu_a = 0.0;
  std::vector<Inhomogeneity> absorbers;
  std::vector<Inhomogeneity> scatterers;

  double bar_mu_t() const { return bar_mu_s + bar_mu_a; }
  double background(Coefficient which) const;
  void validate() const;
};

/// Background plus the sum of the relevant inhomogeneities at (y, z).
double eval_mu(const MediumModel& model, Coefficient which, double y, double z);

/// Samples eval_mu on the grid nodes. Parallel over rows.
ScalarGrid rasterize(const MediumModel& model, Coefficient which, const GridSpec& spec);

/// Throws DomainError if μ_s <= 0 at any node of `spec`.
void check_positive_scattering(const MediumModel& model, const GridSpec& spec);

/// A medium together with the acquisition geometry it is imaged with.
struct Scene {
  SlabGeometry geom;
  MediumModel model;
};

/// Image grid for N samples in Δ: y step Δmax/N over [y_min, y_max] and
/// z step L/N over [0, L], so Δ = (L - z_i)·tanθ always falls on node N - i.
GridSpec image_grid(const SlabGeometry& geom, int N);

/// Named scenes used for the reconstructions shown in the documentation.
///   "square"   : square absorber, side L/2, centred at (L, L/2), δμ_t = μ̄_t.
///   "gaussian" : Gaussian absorber of width sigma_cells·h at (1.5L, L/2), peak μ̄_t.
///   "fig5"     : μ̄_s L = 2.4, μ̄_a L = 0.24; scatterer at (3.125L, L/2),
///                absorber at (0.875L, L/2), both of width sigma_cells·h.
///   "fig7"     : as fig5 with μ̄_s L = μ̄_a L = 2.4.
///   "constant" : no inhomogeneities.
/// Throws PreconditionError for an unknown name.
Scene make_preset(const std::string& name, int N, double sigma_cells, double theta);

} // namespace brt
