#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "brt/errors.hpp"
#include "brt/forward.hpp"
#include "brt/invert_diff.hpp"
#include "brt/phantoms.hpp"

using namespace brt;

namespace {
const double kPi4 = std::numbers::pi / 4;

auto total_of(const MediumModel& m) {
  return [&m](double y, double z) { return eval_mu(m, Coefficient::Total, y, z); };
}
} // namespace

TEST_CASE("forward: broken_ray_integral of constant and zero fields") {
  const SlabGeometry g(1.0, 0.6, 0.0, 3.0);
  for (double delta : {0.0, 0.2, g.delta_max()}) {
    const auto s = segment_lengths(delta, g);
    const BrokenRay ray{0.4, delta, RayFamily::A};
    CHECK(broken_ray_integral([](double, double) { return 1.7; }, ray, g, 0.01) ==
          doctest::Approx(1.7 * (s.first + s.second)).epsilon(1e-13));
    CHECK(broken_ray_integral([](double, double) { return 0.0; }, ray, g, 0.01) == 0.0);
  }
}

TEST_CASE("forward: split_segment_integral is exact for a step") {
  auto step = [](double, double z) { return z <= 0.3 ? 2.0 : 0.5; };
  const double exact = 2.0 * 0.3 + 0.5 * 0.7;
  CHECK(split_segment_integral(step, 0.0, 0.0, 0.0, 1.0, 1.0, 0.07, {0.3}) ==
        doctest::Approx(exact).epsilon(1e-12));
  CHECK(std::abs(segment_integral(step, 0.0, 0.0, 0.0, 1.0, 1.0, 0.07) - exact) > 1e-3);
}

TEST_CASE("forward: quadrature matches the erf closed form") {
  const Scene s = make_preset("fig5", 120, 21.0, kPi4);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uw(-1.0, 4.0), ud(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const BrokenRay ray{uw(rng), ud(rng) * s.geom.delta_max(), t % 2 ? RayFamily::A : RayFamily::B};
    const double q = broken_ray_integral(total_of(s.model), ray, s.geom, 1.0 / 480);
    const double a = analytic_ray_integral(s.model, Coefficient::Total, ray, s.geom);
    CHECK(q == doctest::Approx(a).epsilon(1e-9));
  }
}

TEST_CASE("forward: simulate_uniform") {
  const int N = 20;
  SUBCASE("constant medium is independent of w") {
    const Scene c = make_preset("constant", N, 0.0, kPi4);
    const auto d = simulate_uniform(c.model, c.geom, N, data_window(c.geom, N, DataKind::Single));
    CHECK(d.kind == DataKind::Single);
    CHECK(d.h == doctest::Approx(c.geom.delta_max() / N));
    CHECK(d.w_min == doctest::Approx(c.geom.y_min() - c.geom.delta_max()));
    for (std::size_t n = 0; n < d.n_delta(); ++n) {
      const auto s = segment_lengths(d.delta(n), c.geom);
      for (std::size_t j = 0; j < d.n_w; ++j)
        CHECK(d.at(j, n) == doctest::Approx(s.first + s.second).epsilon(1e-10));
    }
  }
  SUBCASE("rays missing the square see only the background") {
    const Scene sq = make_preset("square", N, 0.0, kPi4);
    const auto d = simulate_uniform(sq.model, sq.geom, N, data_window(sq.geom, N, DataKind::Single));
    // sources beyond y = 1.25 with Δ >= 0 never reach the square
    for (std::size_t j = 0; j < d.n_w; ++j) {
      if (d.w(j) < 1.3) continue;
      for (std::size_t n = 0; n < d.n_delta(); ++n) {
        const auto s = segment_lengths(d.delta(n), sq.geom);
        CHECK(d.at(j, n) == doctest::Approx(sq.model.bar_mu_t() * (s.first + s.second)));
      }
    }
  }
  SUBCASE("square grid matches clipped lengths at every sample") {
    const Scene sq = make_preset("square", N, 0.0, kPi4);
    const auto d = simulate_uniform(sq.model, sq.geom, N, data_window(sq.geom, N, DataKind::Single));
    for (std::size_t n = 0; n < d.n_delta(); ++n) {
      for (std::size_t j = 0; j < d.n_w; ++j) {
        const double oracle =
            analytic_ray_integral(sq.model, Coefficient::Total, {d.w(j), d.delta(n), RayFamily::A}, sq.geom);
        CHECK(d.at(j, n) == doctest::Approx(oracle).epsilon(1e-11));
      }
    }
  }
  SUBCASE("Gaussian grid matches the erf oracle") {
    const Scene gs = make_preset("gaussian", N, 3.0, kPi4);
    const auto d = simulate_uniform(gs.model, gs.geom, N, data_window(gs.geom, N, DataKind::Single));
    for (std::size_t n = 0; n < d.n_delta(); ++n) {
      double sum = 0.0, oracle = 0.0;
      for (std::size_t j = 0; j < d.n_w; ++j) {
        sum += d.at(j, n);
        oracle += analytic_ray_integral(gs.model, Coefficient::Total, {d.w(j), d.delta(n), RayFamily::A}, gs.geom);
      }
      CHECK(sum == doctest::Approx(oracle).epsilon(1e-8));
    }
  }
  SUBCASE("scatterers are rejected") {
    const Scene f = make_preset("fig5", N, 3.0, kPi4);
    CHECK_THROWS_AS(simulate_uniform(f.model, f.geom, N, data_window(f.geom, N, DataKind::Single)),
                    PreconditionError);
  }
}

TEST_CASE("forward: shift covariance") {
  const int N = 20;
  const SlabGeometry g(1.0, kPi4, 0.0, 3.0);
  const double shift = 3.0 / N;
  MediumModel a{0.5, 0.5, {Inhomogeneity::gaussian(1.2, 0.4, 0.1, 1.0)}, {}};
  MediumModel b{0.5, 0.5, {Inhomogeneity::gaussian(1.2 + shift, 0.4, 0.1, 1.0)}, {}};
  const auto win = data_window(g, N, DataKind::Single);
  const auto da = simulate_uniform(a, g, N, win);
  const auto db = simulate_uniform(b, g, N, win);
  for (std::size_t n = 0; n < da.n_delta(); ++n)
    for (std::size_t j = 0; j + 3 < da.n_w; ++j) CHECK(db.at(j + 3, n) == doctest::Approx(da.at(j, n)).epsilon(1e-11));
}

TEST_CASE("forward: simulate_full") {
  const int N = 12;
  const SlabGeometry g(1.0, kPi4, 0.0, 2.0);
  const auto win = data_window(g, N, DataKind::Single);
  SUBCASE("uniform medium has no log term") {
    const MediumModel m{0.7, 0.3, {}, {}};
    const auto d = simulate_full(m, g, RayFamily::B, N, win);
    const auto u = simulate_uniform(m, g, N, win);
    for (std::size_t k = 0; k < d.values.size(); ++k) CHECK(d.values[k] == doctest::Approx(u.values[k]));
  }
  SUBCASE("scatterer of peak 2 bar_mu_s at the vertex subtracts ln 2") {
    const double w = 1.0, delta = 0.5;
    const auto R = vertex({w, delta, RayFamily::A}, g);
    MediumModel m{0.7, 0.3, {}, {Inhomogeneity::gaussian(R.y, R.z, 0.1, 0.7)}};
    const WindowSpec one{w, 1};
    const auto d = simulate_full(m, g, RayFamily::A, 2, one, {1e-3}); // Δ_1 = 0.5
    const double integral = analytic_ray_integral(m, Coefficient::Total, {w, delta, RayFamily::A}, g);
    CHECK(d.at(0, 1) == doctest::Approx(integral - std::log(2.0)).epsilon(1e-10));
  }
  SUBCASE("fig5 probe ray matches fine quadrature") {
    const Scene f = make_preset("fig5", 120, 21.0, kPi4);
    const double w = 2.7, delta = 0.45;
    const WindowSpec one{w, 1};
    const auto d = simulate_full(f.model, f.geom, RayFamily::A, 20, one); // Δ_9 = 0.45
    const double fine = broken_ray_integral(total_of(f.model), {w, delta, RayFamily::A}, f.geom, 1e-4);
    const auto R = vertex({w, delta, RayFamily::A}, f.geom);
    const double log_term = std::log(eval_mu(f.model, Coefficient::Scattering, R.y, R.z) / f.model.bar_mu_s);
    CHECK(d.at(0, 9) == doctest::Approx(fine - log_term).epsilon(1e-8));
  }
  SUBCASE("non-positive scattering at a vertex") {
    MediumModel m{0.5, 0.5, {}, {Inhomogeneity::gaussian(1.0, 0.5, 0.1, -1.0)}};
    CHECK_THROWS_AS(simulate_full(m, g, RayFamily::A, N, win), DomainError);
  }
}

TEST_CASE("forward: differential") {
  const int N = 16;
  const SlabGeometry g(1.0, kPi4, 0.0, 3.0);
  SUBCASE("identical inputs give zero") {
    const MediumModel m{0.5, 0.5, {Inhomogeneity::gaussian(1.5, 0.5, 0.2, 1.0)}, {}};
    const auto win = data_window(g, N, DataKind::Differential);
    const auto a = simulate_full(m, g, RayFamily::A, N, win);
    const auto d = differential(a, a);
    CHECK(d.kind == DataKind::Differential);
    for (double v : d.values) CHECK(v == 0.0);
  }
  SUBCASE("uniform mu_t with varying scattering cancels") {
    MediumModel m{1.2, 2.4,
                  {Inhomogeneity::gaussian(1.5, 0.5, 0.15, -2.4)},
                  {Inhomogeneity::gaussian(1.5, 0.5, 0.15, 2.4)}};
    const auto p = simulate_pair(m, g, N);
    const auto d = differential(p.phi_a, p.phi_b);
    for (double v : d.values) CHECK(std::abs(v) < 1e-12);
  }
  SUBCASE("fig7 matches direct quadrature of both legs") {
    const Scene f = make_preset("fig7", N, 3.0, kPi4);
    const auto p = simulate_pair(f.model, f.geom, N, {}, {1e-3});
    const auto d = differential(p.phi_a, p.phi_b);
    for (std::size_t j : {std::size_t{10}, std::size_t{40}, std::size_t{70}}) {
      for (std::size_t n : {std::size_t{0}, std::size_t{5}, std::size_t{16}}) {
        const double ia = broken_ray_integral(total_of(f.model), {d.w(j), d.delta(n), RayFamily::A}, f.geom, 1e-4);
        const double ib = broken_ray_integral(total_of(f.model), {d.w(j), d.delta(n), RayFamily::B}, f.geom, 1e-4);
        CHECK(std::abs(d.at(j, n) - (ia - ib)) < 1e-9);
      }
    }
  }
  SUBCASE("grid mismatch") {
    const MediumModel m{0.5, 0.5, {}, {}};
    const auto a = simulate_full(m, g, RayFamily::A, N, data_window(g, N, DataKind::Single));
    const auto b = simulate_full(m, g, RayFamily::B, N, data_window(g, N, DataKind::Differential));
    CHECK_THROWS_AS(differential(a, b), DomainError);
  }
}

TEST_CASE("forward: subtract_background") {
  const Scene c = make_preset("constant", 10, 0.0, kPi4);
  const auto d = simulate_uniform(c.model, c.geom, 10, data_window(c.geom, 10, DataKind::Single));
  const auto f = subtract_background(d, c.model.bar_mu_t());
  for (double v : f.values) CHECK(std::abs(v) < 1e-12);
}
