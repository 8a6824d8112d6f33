#include "brt/invert_diff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brt/errors.hpp"
#include "brt/parallel.hpp"
#include "brt/phantoms.hpp"
#include "brt/stencils.hpp"

namespace brt {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kMaxExponent = 50.0;
constexpr double kLeakageThreshold = 1e-3;

std::size_t lattice_index(const DataFunction& data, double y) {
  const double f = (y - data.w_min) / data.h;
  const double r = std::round(f);
  if (std::abs(f - r) > 1e-6 || r < 0.0 || r > static_cast<double>(data.n_w - 1)) {
    throw DomainError("image node is not a source position of the data");
  }
  return static_cast<std::size_t>(r);
}

} // namespace

PairData simulate_pair(const MediumModel& model, const SlabGeometry& geom, int N,
                       const RayFamilyPair& pair, const ForwardOptions& options) {
  const auto window = data_window(geom, N, DataKind::Differential);
  return {simulate_full(model, geom, pair.a, N, window, options),
          simulate_full(model, geom, pair.b, N, window, options)};
}

InverseResult invert_diff_fourier(const SpectralData& spec_d, const SlabGeometry& geom,
                                  double bar_mu_t) {
  const int N = static_cast<int>(spec_d.n_delta) - 1;
  if (N < 3) throw DomainError("differential inversion needs at least four Δ samples");
  const GridSpec grid = image_grid(geom, N);
  const double half_sin = 0.5 * std::sin(geom.theta());
  const std::size_t centre = static_cast<std::size_t>(spec_d.half_modes);

  ModeProfiles profiles{spec_d.k_values, grid.nz, std::vector<cplx>(spec_d.modes() * grid.nz)};
  parallel_for(spec_d.modes(), [&](std::size_t m) {
    if (m == centre) return;
    const double k = spec_d.k_values[m];
    const auto col = spec_d.column(m);
    const auto d2 = detail::second_derivative(col, spec_d.h);
    for (std::size_t i = 0; i < grid.nz; ++i) {
      const std::size_t n = spec_d.n_delta - 1 - i;
      profiles.at(m, i) = half_sin * (-d2[n] / (kI * k) + kI * k * col[n]);
    }
  });
  if (spec_d.slope_at_zero.size() == spec_d.n_delta) {
    // Limit k -> 0 of -(1/ik)∂²_Δ ψ̃_d is i ∂²_Δ ∂_k ψ̃_d(0, Δ).
    const auto d2 = detail::second_derivative(std::span<const cplx>(spec_d.slope_at_zero), spec_d.h);
    for (std::size_t i = 0; i < grid.nz; ++i) {
      profiles.at(centre, i) = half_sin * kI * d2[spec_d.n_delta - 1 - i];
    }
  } else {
    for (std::size_t i = 0; i < grid.nz; ++i) {
      profiles.at(centre, i) = 0.5 * (profiles.at(centre - 1, i) + profiles.at(centre + 1, i));
    }
  }
  auto inverse = inverse_transform_k(profiles, grid);
  inverse.grid = inverse.grid.plus(bar_mu_t);
  return inverse;
}

DiffResult invert_diff_realspace(const DataFunction& data_d, const SlabGeometry& geom,
                                 double bar_mu_t) {
  if (data_d.kind != DataKind::Differential) {
    throw PreconditionError("real-space differential inversion needs differential data");
  }
  if (data_d.N < 3) throw DomainError("differential inversion needs at least four Δ samples");
  const GridSpec grid = image_grid(geom, data_d.N);
  const std::size_t nd = data_d.n_delta();
  const std::size_t nw = data_d.n_w;
  const double h = data_d.h;

  DiffResult result;
  double peak = 0.0;
  double edge = 0.0;
  for (std::size_t n = 0; n < nd; ++n) {
    for (std::size_t j = 0; j < nw; ++j) peak = std::max(peak, std::abs(data_d.at(j, n)));
    edge = std::max({edge, std::abs(data_d.at(0, n)), std::abs(data_d.at(nw - 1, n))});
  }
  result.edge_leakage = peak > 0.0 ? edge / peak : 0.0;
  result.leaky = result.edge_leakage > kLeakageThreshold;

  // prefix[n][j] = trapezoid-weighted Σ_{i<j} ψ_d(w_i, Δ_n)
  std::vector<double> prefix(nd * (nw + 1), 0.0);
  for (std::size_t n = 0; n < nd; ++n) {
    double* p = prefix.data() + n * (nw + 1);
    for (std::size_t j = 0; j < nw; ++j) {
      const double weight = (j == 0 || j + 1 == nw) ? 0.5 : 1.0;
      p[j + 1] = p[j] + weight * data_d.at(j, n);
    }
  }

  std::vector<std::size_t> column(grid.ny);
  for (std::size_t j = 0; j < grid.ny; ++j) column[j] = lattice_index(data_d, grid.y(j));

  const double quarter_sin = 0.25 * std::sin(geom.theta());
  ScalarGrid out(grid);
  parallel_for(grid.ny, [&](std::size_t j) {
    const std::size_t jw = column[j];
    std::vector<double> sgn_integral(nd);
    for (std::size_t n = 0; n < nd; ++n) {
      const double* p = prefix.data() + n * (nw + 1);
      const double total = p[nw];
      const double edge_weight = (jw == 0 || jw + 1 == nw) ? 0.5 : 1.0;
      const double below = p[jw];
      const double above = total - p[jw] - edge_weight * data_d.at(jw, n);
      sgn_integral[n] = h * (below - above);
    }
    const auto curvature = detail::second_derivative(std::span<const double>(sgn_integral), h);
    for (std::size_t i = 0; i < grid.nz; ++i) {
      const std::size_t n = nd - 1 - i;
      const double y = grid.y(j);
      const double slope = (data_d.interp_w(y + h, n) - data_d.interp_w(y - h, n)) / (2.0 * h);
      out.at(j, i) = bar_mu_t + quarter_sin * (curvature[n] - 2.0 * slope);
    }
  });
  result.mu_t = std::move(out);
  return result;
}

ScatteringResult recover_scattering(const ScalarGrid& mu_t, const DataFunction& phi,
                                    RayFamily family, const SlabGeometry& geom, double bar_mu_s,
                                    double bar_mu_t, double quad_step) {
  if (phi.kind != DataKind::Single) throw PreconditionError("scattering recovery needs single-family data");
  if (!(bar_mu_s > 0.0)) throw DomainError("background scattering must be positive");
  const GridSpec& grid = mu_t.spec();
  const std::size_t N = static_cast<std::size_t>(phi.N);
  if (grid.nz != N + 1) throw DomainError("grid depth sampling does not match the data");
  const double step = quad_step > 0.0 ? quad_step : 0.25 * std::min(grid.dy(), grid.dz());
  auto field = [&mu_t, bar_mu_t](double y, double z) { return mu_t.sample(y, z, bar_mu_t); };

  ScatteringResult result{ScalarGrid(grid), 0, 0};
  std::vector<std::size_t> clamped(grid.nz, 0);
  std::vector<std::size_t> missing(grid.nz, 0);
  parallel_for(grid.nz, [&](std::size_t i) {
    const std::size_t n = N - i;
    for (std::size_t j = 0; j < grid.ny; ++j) {
      const double y = grid.y(j);
      const double f = (y - phi.w_min) / phi.h;
      const double r = std::round(f);
      if (std::abs(f - r) > 1e-6 || r < 0.0 || r > static_cast<double>(phi.n_w - 1)) {
        result.mu_s.at(j, i) = std::numeric_limits<double>::quiet_NaN();
        ++missing[i];
        continue;
      }
      const BrokenRay ray{y, phi.delta(n), family};
      double exponent = broken_ray_integral(field, ray, geom, step) -
                        phi.at(static_cast<std::size_t>(r), n);
      if (std::abs(exponent) > kMaxExponent) {
        exponent = std::clamp(exponent, -kMaxExponent, kMaxExponent);
        ++clamped[i];
      }
      result.mu_s.at(j, i) = bar_mu_s * std::exp(exponent);
    }
  });
  for (std::size_t i = 0; i < grid.nz; ++i) {
    result.clamped += clamped[i];
    result.missing += missing[i];
  }
  return result;
}

ScalarGrid absorption(const ScalarGrid& mu_t, const ScalarGrid& mu_s) { return mu_t - mu_s; }

} // namespace brt
