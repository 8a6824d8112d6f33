#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "brt/forward.hpp"
#include "brt/grid.hpp"

namespace brt {

using cplx = std::complex<double>;

/// Frequencies k_m = (π/h)(m/M - 1), m = 0..2M, on [-π/h, π/h].
/// k_M = 0 and k_m = -k_{2M-m}. With M = N this is the classic 2N+1 grid;
/// larger M refines the spacing so that the implied period 2Mh covers
/// the whole source window.
std::vector<double> k_grid(double h, int half_modes);

/// ψ̃(k_m, Δ_n) stored column-wise: values[m·n_delta + n].
struct SpectralData {
  int half_modes = 0; ///< M; there are 2M+1 modes
  std::size_t n_delta = 0;
  double h = 0.0;
  std::vector<double> k_values;
  std::vector<cplx> values;
  /// ∂_k ψ̃(0, Δ_n) = i h Σ_j w_j ψ(w_j, Δ_n); empty when unknown.
  std::vector<cplx> slope_at_zero;

  std::size_t modes() const { return k_values.size(); }
  std::span<const cplx> column(std::size_t m) const {
    return {values.data() + m * n_delta, n_delta};
  }
  std::span<cplx> column(std::size_t m) { return {values.data() + m * n_delta, n_delta}; }
};

/// Smallest M >= N whose period 2Mh spans all n_w source positions.
int default_half_modes(const DataFunction& data);

/// ψ̃(k_m, Δ_n) = h Σ_j ψ(w_j, Δ_n) e^{i k_m w_j}, by direct summation.
/// Also fills slope_at_zero.
/// The input should be background-free so that it decays in w.
SpectralData transform_w(const DataFunction& data, int half_modes = 0);

/// μ̃(k_m, z_i) for every mode, values[m·nz + i].
struct ModeProfiles {
  std::vector<double> k_values;
  std::size_t nz = 0;
  std::vector<cplx> values;

  cplx& at(std::size_t m, std::size_t i) { return values[m * nz + i]; }
  cplx at(std::size_t m, std::size_t i) const { return values[m * nz + i]; }
};

struct InverseResult {
  ScalarGrid grid;
  double imag_ratio = 0.0; ///< max |Im| / max |Re| before the imaginary part was dropped
};

/// μ(y_j, z_i) = (Δk / 2π) Σ'_m μ̃(k_m, z_i) e^{-i k_m y_j}. The two end
/// modes ±π/h carry half weight, which makes transform_w followed by this
/// call the identity for lattice-aligned positions within one period.
InverseResult inverse_transform_k(const ModeProfiles& mu_tilde, const GridSpec& spec);

} // namespace brt
