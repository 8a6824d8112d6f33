#pragma once

#include <cstddef>

#include "brt/forward.hpp"
#include "brt/grid.hpp"
#include "brt/spectral.hpp"

namespace brt {

/// The two ray families measured per source position. They must share every
/// vertex so that the scattering log terms cancel in φ_a - φ_b; with normal
/// incidence that makes family B the mirror image of family A.
struct RayFamilyPair {
  RayFamily a = RayFamily::A;
  RayFamily b = RayFamily::B;
};

struct PairData {
  DataFunction phi_a;
  DataFunction phi_b;
};

/// Simulates φ for both families on the differential window.
PairData simulate_pair(const MediumModel& model, const SlabGeometry& geom, int N,
                       const RayFamilyPair& pair = {}, const ForwardOptions& options = {});

/// μ̃_t(k, z) = (sinθ/2)(-(1/ik) ∂²_Δ + ik) ψ̃_d at Δ = (L - z)tanθ, then the
/// inverse transform; μ̄_t is added to the result. The k = 0 column comes from
/// spec_d.slope_at_zero, or is the average of its two neighbours without it.
InverseResult invert_diff_fourier(const SpectralData& spec_d, const SlabGeometry& geom,
                                  double bar_mu_t);

struct DiffResult {
  ScalarGrid mu_t;
  double edge_leakage = 0.0; ///< max |ψ_d| on the window edges / max |ψ_d|
  bool leaky = false;        ///< edge_leakage above 1e-3
};

/// μ_t = μ̄_t + (sinθ/4){∂²_Δ ∫ sgn(y - w) ψ_d(w, Δ) dw - 2 ∂_y ψ_d(y, Δ)}
/// at Δ = (L - z)tanθ. Trapezoid in w with sgn(0) = 0; central differences.
DiffResult invert_diff_realspace(const DataFunction& data_d, const SlabGeometry& geom,
                                 double bar_mu_t);

struct ScatteringResult {
  ScalarGrid mu_s;
  std::size_t clamped = 0; ///< nodes whose exponent had to be clamped
  std::size_t missing = 0; ///< nodes without a ray in the data (left NaN)
};

/// μ_s(R) = μ̄_s exp(∫_BR μ_t dℓ - φ) for the ray of `family` whose vertex is
/// each image node. μ_t is interpolated bilinearly and taken as μ̄_t outside
/// the grid. quad_step = 0 selects a quarter of the grid step.
ScatteringResult recover_scattering(const ScalarGrid& mu_t, const DataFunction& phi,
                                    RayFamily family, const SlabGeometry& geom, double bar_mu_s,
                                    double bar_mu_t, double quad_step = 0.0);

/// μ_a = μ_t - μ_s. Throws DomainError for grids that are not congruent.
ScalarGrid absorption(const ScalarGrid& mu_t, const ScalarGrid& mu_s);

} // namespace brt
