#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "brt/errors.hpp"
#include "brt/invert_diff.hpp"
#include "brt/phantoms.hpp"
#include "brt/stencils.hpp"

using namespace brt;

namespace {

const double kPi4 = std::numbers::pi / 4;

DataFunction zero_differential(const SlabGeometry& g, int N) {
  const auto win = data_window(g, N, DataKind::Differential);
  return DataFunction(DataKind::Differential, N, win.n_w, win.w_min, g);
}

// ψ̃_d(k, Δ) = (-2i / cosθ) ∫_{L1}^{L} sin(k tanθ (z - L1)) μ̃(k, z) dz for
// μ̃(k, z) = ĝ(k) f(z), with ĝ the transform of exp(-(y - y0)²/s²).
double depth_profile(double z) { return std::exp(-std::pow((z - 0.5) / 0.2, 2)); }

double sine_kernel_error(int N) {
  const double theta = 0.7;
  const SlabGeometry g(1.0, theta, 0.0, 3.0);
  const double y0 = 1.5, sy = 0.15;
  const double h = g.delta_max() / N;
  SpectralData s;
  s.half_modes = 4 * N;
  s.n_delta = static_cast<std::size_t>(N) + 1;
  s.h = h;
  s.k_values = k_grid(h, s.half_modes);
  s.values.resize(s.modes() * s.n_delta);
  s.slope_at_zero.resize(s.n_delta);
  std::vector<double> x, wx;
  detail::gauss_legendre(64, x, wx);
  const double c = std::cos(theta), t = std::tan(theta);
  for (std::size_t n = 0; n < s.n_delta; ++n) {
    const double L1 = segment_lengths(n * h, g).first;
    const double half = 0.5 * (1.0 - L1);
    for (std::size_t m = 0; m < s.modes(); ++m) {
      const double k = s.k_values[m];
      const cplx gk = sy * std::sqrt(std::numbers::pi) * std::exp(-k * k * sy * sy / 4) * std::polar(1.0, k * y0);
      double sum = 0.0;
      for (std::size_t p = 0; p < x.size(); ++p) {
        const double z = L1 + half * (x[p] + 1.0);
        sum += wx[p] * half * std::sin(k * t * (z - L1)) * depth_profile(z);
      }
      s.column(m)[n] = cplx{0.0, -2.0 / c} * gk * sum;
    }
    double moment = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p) {
      const double z = L1 + half * (x[p] + 1.0);
      moment += wx[p] * half * t * (z - L1) * depth_profile(z);
    }
    // ∂_k ψ̃_d at k = 0
    s.slope_at_zero[n] = cplx{0.0, -2.0 / c} * sy * std::sqrt(std::numbers::pi) * moment;
  }
  const auto r = invert_diff_fourier(s, g, 0.0);
  double num = 0.0, den = 0.0;
  const GridSpec spec = r.grid.spec();
  for (std::size_t i = 0; i < spec.nz; ++i)
    for (std::size_t j = 0; j < spec.ny; ++j) {
      const double exact = depth_profile(spec.z(i)) * std::exp(-std::pow((spec.y(j) - y0) / sy, 2));
      num += std::pow(r.grid.at(j, i) - exact, 2);
      den += exact * exact;
    }
  return std::sqrt(num / den);
}

} // namespace

TEST_CASE("invert_diff: zero data") {
  const int N = 20;
  const SlabGeometry g(1.0, kPi4, 0.0, 3.0);
  const auto d = zero_differential(g, N);
  const auto r = invert_diff_realspace(d, g, 0.8);
  for (double v : r.mu_t.values()) CHECK(v == doctest::Approx(0.8));
  CHECK_FALSE(r.leaky);
  const auto f = invert_diff_fourier(transform_w(d), g, 0.0);
  for (double v : f.grid.values()) CHECK(v == 0.0);
  CHECK_THROWS_AS(invert_diff_realspace(DataFunction(DataKind::Single, N, d.n_w, d.w_min, g), g, 0.0),
                  PreconditionError);
}

TEST_CASE("invert_diff: uniform mu_t with a strong scatterer gives a constant grid") {
  const int N = 40;
  const SlabGeometry g(1.0, kPi4, 0.0, 3.0);
  MediumModel m{1.2, 2.4, {Inhomogeneity::gaussian(1.5, 0.5, 0.15, -2.4)}, {Inhomogeneity::gaussian(1.5, 0.5, 0.15, 2.4)}};
  const auto p = simulate_pair(m, g, N);
  const auto d = differential(p.phi_a, p.phi_b);
  const ScalarGrid real = invert_diff_realspace(d, g, m.bar_mu_t()).mu_t;
  const ScalarGrid fourier = invert_diff_fourier(transform_w(d), g, m.bar_mu_t()).grid;
  for (double v : real.values()) CHECK(v == doctest::Approx(3.6).epsilon(1e-10));
  for (double v : fourier.values()) CHECK(v == doctest::Approx(3.6).epsilon(1e-10));
}

TEST_CASE("invert_diff: linearity") {
  const int N = 16;
  const SlabGeometry g(1.0, kPi4, 0.0, 2.0);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  auto a = zero_differential(g, N), b = a, ab = a;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    a.values[k] = nd(rng);
    b.values[k] = nd(rng);
    ab.values[k] = 3.0 * a.values[k] + b.values[k];
  }
  const auto ra = invert_diff_realspace(a, g, 0.0).mu_t, rb = invert_diff_realspace(b, g, 0.0).mu_t;
  const auto rab = invert_diff_realspace(ab, g, 0.0).mu_t;
  const auto fa = invert_diff_fourier(transform_w(a), g, 0.0).grid, fb = invert_diff_fourier(transform_w(b), g, 0.0).grid;
  const auto fab = invert_diff_fourier(transform_w(ab), g, 0.0).grid;
  for (std::size_t k = 0; k < ra.values().size(); ++k) {
    CHECK(rab.values()[k] == doctest::Approx(3.0 * ra.values()[k] + rb.values()[k]).epsilon(1e-9).scale(1.0));
    CHECK(fab.values()[k] == doctest::Approx(3.0 * fa.values()[k] + fb.values()[k]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("invert_diff: sine-kernel synthesis is inverted at second order") {
  const double e40 = sine_kernel_error(40);
  const double e80 = sine_kernel_error(80);
  CHECK(e40 < 1e-2);
  CHECK(e80 < e40 / 3.0);
}

TEST_CASE("invert_diff: recover_scattering with exact mu_t") {
  const int N = 60;
  const SlabGeometry g(1.0, kPi4, 0.0, 3.0);
  const GridSpec grid = image_grid(g, N);
  SUBCASE("uniform scattering") {
    MediumModel m{0.8, 0.4, {Inhomogeneity::gaussian(1.5, 0.5, 0.2, 0.5)}, {}};
    const auto phi = simulate_full(m, g, RayFamily::A, N, data_window(g, N, DataKind::Single));
    const auto r = recover_scattering(rasterize(m, Coefficient::Total, grid), phi, RayFamily::A, g, 0.8, 1.2);
    CHECK(r.missing == 0);
    CHECK(r.clamped == 0);
    for (double v : r.mu_s.values()) CHECK(v == doctest::Approx(0.8).epsilon(2e-3));
  }
  SUBCASE("scatterer of peak 2 bar_mu_s") {
    MediumModel m{0.8, 0.4, {}, {Inhomogeneity::gaussian(1.5, 0.5, 0.25, 0.8)}};
    const auto phi = simulate_full(m, g, RayFamily::B, N, data_window(g, N, DataKind::Differential));
    const auto r = recover_scattering(rasterize(m, Coefficient::Total, grid), phi, RayFamily::B, g, 0.8, 1.2);
    CHECK(r.mu_s.at(90, 30) == doctest::Approx(1.6).epsilon(2e-3));
  }
}

TEST_CASE("invert_diff: absorption") {
  GridSpec g{4, 3, 0.0, 1.0, 0.0, 1.0};
  const ScalarGrid t(g, 2.0), s(g, 0.5);
  const ScalarGrid zero = absorption(t, t), diff = absorption(t, s);
  for (double v : zero.values()) CHECK(v == 0.0);
  for (double v : diff.values()) CHECK(v == 1.5);
  CHECK_THROWS_AS(absorption(t, ScalarGrid(GridSpec{5, 3, 0.0, 1.0, 0.0, 1.0})), DomainError);
}
