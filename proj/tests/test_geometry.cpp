#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "brt/errors.hpp"
#include "brt/geometry.hpp"

using namespace brt;

namespace {
const double kPi4 = std::numbers::pi / 4;
}

TEST_CASE("geometry: invariants") {
  const SlabGeometry g(1.0, kPi4, 0.0, 3.0);
  CHECK(g.delta_max() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(SlabGeometry(1.0, 0.0, 0.0, 3.0), DomainError);
  CHECK_THROWS_AS(SlabGeometry(1.0, std::numbers::pi / 2, 0.0, 3.0), DomainError);
  CHECK_THROWS_AS(SlabGeometry(-1.0, kPi4, 0.0, 3.0), DomainError);
  CHECK_THROWS_AS(SlabGeometry(1.0, kPi4, 3.0, 3.0), DomainError);
}

TEST_CASE("geometry: segment_lengths examples") {
  const SlabGeometry g(1.0, kPi4, 0.0, 3.0);
  auto s = segment_lengths(0.0, g);
  CHECK(s.first == doctest::Approx(1.0));
  CHECK(s.second == doctest::Approx(0.0));
  s = segment_lengths(g.delta_max(), g);
  CHECK(s.first == doctest::Approx(0.0));
  CHECK(s.second == doctest::Approx(std::sqrt(2.0)));
  s = segment_lengths(0.5, g);
  CHECK(s.first == doctest::Approx(0.5));
  CHECK(s.second == doctest::Approx(0.5 * std::sqrt(2.0)));
  CHECK_THROWS_AS(segment_lengths(-0.1, g), DomainError);
  CHECK_THROWS_AS(segment_lengths(1.1, g), DomainError);
}

TEST_CASE("geometry: ray_point examples") {
  const SlabGeometry g(1.0, kPi4, 0.0, 3.0);
  const double delta = 0.3;
  const auto s = segment_lengths(delta, g);
  auto p = ray_point(delta, 0.0, g);
  CHECK(p.eta == doctest::Approx(0.0));
  CHECK(p.zeta == doctest::Approx(0.0));
  p = ray_point(delta, s.first, g);
  CHECK(p.eta == doctest::Approx(0.0));
  CHECK(p.zeta == doctest::Approx(s.first));
  p = ray_point(delta, s.first + s.second, g);
  CHECK(p.eta == doctest::Approx(delta));
  CHECK(p.zeta == doctest::Approx(1.0));
  CHECK_THROWS_AS(ray_point(delta, -0.01, g), DomainError);
  CHECK_THROWS_AS(ray_point(delta, s.first + s.second + 0.01, g), DomainError);
}

TEST_CASE("geometry: vertex examples") {
  const SlabGeometry g(1.0, kPi4, 0.0, 3.0);
  auto v = vertex({0.0, 0.0, RayFamily::A}, g);
  CHECK(v.y == doctest::Approx(0.0));
  CHECK(v.z == doctest::Approx(1.0));
  v = vertex({0.0, g.delta_max(), RayFamily::A}, g);
  CHECK(v.z == doctest::Approx(0.0));
  v = vertex({1.0, 0.5, RayFamily::B}, g);
  CHECK(v.y == doctest::Approx(1.0));
  CHECK(v.z == doctest::Approx(0.5));
  CHECK_THROWS_AS(vertex({0.0, 1.5, RayFamily::A}, g), DomainError);
}

TEST_CASE("geometry: properties over random rays") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const double theta = 0.05 + 1.4 * u(rng);
    const double L = 0.2 + 2.0 * u(rng);
    const SlabGeometry g(L, theta, 0.0, 1.0);
    const double delta = g.delta_max() * u(rng);
    const auto s = segment_lengths(delta, g);
    CHECK(s.first + s.second * std::cos(theta) == doctest::Approx(L).epsilon(1e-12));
    CHECK(s.second * std::sin(theta) == doctest::Approx(delta).epsilon(1e-12));
    const double ell = (s.first + s.second) * u(rng);
    const auto p = ray_point(delta, ell, g);
    CHECK(p.zeta >= -1e-12);
    CHECK(p.zeta <= L + 1e-12);
    CHECK(p.eta >= -1e-12);
    CHECK(p.eta <= delta + 1e-12);
    // unit speed on each leg
    const double e = 1e-6;
    if (ell > e && ell + e < s.first + s.second && std::abs(ell - s.first) > 2 * e) {
      const auto a = ray_point(delta, ell - e, g);
      const auto b = ray_point(delta, ell + e, g);
      CHECK(std::hypot(b.eta - a.eta, b.zeta - a.zeta) / (2 * e) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}
