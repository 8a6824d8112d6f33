#pragma once

#include <span>
#include <vector>

#include "brt/forward.hpp"
#include "brt/grid.hpp"
#include "brt/spectral.hpp"

namespace brt {

/// Angle-dependent constants of the inversion filter.
struct FilterContext {
  double theta = 0.0;
  double lambda = 0.0; ///< cot(θ/2)
  double c = 0.0;      ///< cos θ
  double kappa = 0.0;  ///< c / (1 - c) = cot(θ/2) cot θ

  explicit FilterContext(double theta);
  double q(double k) const { return k * std::tan(theta); }
};

/// How (∂/∂Δ + ik) is discretized on the Δ_n nodes.
enum class DeltaStencil {
  /// e^{-ikΔ} ∂_Δ (e^{ikΔ} ψ̃) with three-point stencils exact for 1, Δ and
  /// e^{ikΔ}, one-sided at Δ_0 and Δ_N. Annihilates e^{-ikΔ} exactly, so the
  /// column inversion ignores the gauge mode a·e^{iqz} to rounding.
  Covariant,
  /// Central difference of ψ̃ plus ik ψ̃, second-order one-sided at the ends.
  Plain,
};

struct UniformOptions {
  DeltaStencil stencil = DeltaStencil::Covariant;
  bool consistency_filter = false; ///< project each column onto consistent data first
  int half_modes = 0;              ///< 0 selects default_half_modes
};

/// H(k_m, Δ_n) for every node of one spectral column.
std::vector<cplx> filter_H_column(std::span<const cplx> column, double k, double h,
                                  DeltaStencil stencil = DeltaStencil::Covariant);

/// H(k_m, z) = (∂_Δ + ik) ψ̃ at Δ = (L - z) tanθ, linearly interpolated in Δ
/// between nodes. Throws DomainError for z outside [0, L].
cplx filter_H(const SpectralData& spec, std::size_t m, double z, const SlabGeometry& geom,
              DeltaStencil stencil = DeltaStencil::Covariant);

/// μ̃_t(k_m, z_i) on z_i = i·L/N, i = 0..N:
///   λ [H(z) - ikλ e^{-ikλz} ∫_0^z e^{iλkℓ} H(ℓ) dℓ],
/// integral panel by panel, e^{iλkℓ} exact against a local cubic in H.
std::vector<cplx> invert_k_column(const SpectralData& spec, std::size_t m,
                                  const SlabGeometry& geom,
                                  DeltaStencil stencil = DeltaStencil::Covariant);

/// Solution f(z) of the per-frequency equation written in q = k tanθ for a
/// profile F(z_i) sampled with step dz, via G = F' - iqF:
///   f = -κ [G - iκq e^{-iκqz} ∫_0^z e^{iκqℓ} G dℓ].
std::vector<cplx> inv_solution(std::span<const cplx> F, double q, const FilterContext& ctx,
                               double dz);

/// Residual of the data consistency condition
///   F(L) - e^{-iκqL} [c F(0) + iκq ∫_0^L e^{iκqℓ} F(ℓ) dℓ],
/// integral by a Filon-type rule (piecewise quartic F, exact oscillatory weight).
cplx consistency_residual(std::span<const cplx> F, double q, const FilterContext& ctx, double dz);

struct ConsistencySplit {
  std::vector<cplx> regular; ///< F - a e^{iqz}, with zero residual
  cplx a{};
  bool degenerate = false; ///< residual insensitive to a; a = 0 returned
};

/// Unique split F = F_reg + a e^{iqz} with F_reg satisfying the condition.
ConsistencySplit consistency_decompose(std::span<const cplx> F, double q,
                                       const FilterContext& ctx, double dz);

/// Column F(z_i) = ψ̃(k_m, Δ_{N-i}) of a spectral column (reversal in Δ).
std::vector<cplx> profile_from_column(std::span<const cplx> column);

struct UniformResult {
  ScalarGrid mu_t;
  double imag_ratio = 0.0;
  std::vector<cplx> gauge; ///< per-mode a, filled when the consistency filter ran
};

/// Fourier-space inversion of single-family data: background removal,
/// transform in w, per-k inversion, inverse transform, background restored.
UniformResult reconstruct_uniform(const DataFunction& data, const SlabGeometry& geom,
                                  double bar_mu_t, const UniformOptions& options = {});

/// Real-space filtered backprojection of single-family data on the image grid.
/// Throws DomainError when the image window is not covered by the data.
ScalarGrid backproject_realspace(const DataFunction& data, const SlabGeometry& geom,
                                 double bar_mu_t);

} // namespace brt
