#include "brt/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "brt/errors.hpp"
#include "brt/parallel.hpp"

namespace brt {

DataFunction::DataFunction(DataKind kind_, int N_, std::size_t n_w_, double w_min_,
                           const SlabGeometry& geom)
    : kind(kind_), N(N_), n_w(n_w_), w_min(w_min_), h(geom.delta_max() / N_), L(geom.L()),
      theta(geom.theta()) {
  if (N_ < 1 || n_w_ < 1) throw DomainError("data grid must be non-empty");
  values.assign(n_w * n_delta(), 0.0);
}

double DataFunction::interp_w(double w, std::size_t n) const {
  const double f = (w - w_min) / h;
  if (f < 0.0 || f > static_cast<double>(n_w - 1)) return 0.0;
  const auto j = std::min(static_cast<std::size_t>(f), n_w - 1);
  if (j + 1 >= n_w) return at(j, n);
  const double t = f - static_cast<double>(j);
  return (1.0 - t) * at(j, n) + t * at(j + 1, n);
}

bool DataFunction::same_grid(const DataFunction& o) const {
  auto same = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); };
  return N == o.N && n_w == o.n_w && same(w_min, o.w_min) && same(h, o.h) && same(L, o.L) &&
         same(theta, o.theta);
}

WindowSpec data_window(const SlabGeometry& geom, int N, DataKind kind) {
  if (N < 1) throw DomainError("N must be positive");
  const double h = geom.delta_max() / N;
  const auto image_cells = static_cast<std::size_t>(std::ceil((geom.y_max() - geom.y_min()) / h - 1e-9));
  const std::size_t pad = static_cast<std::size_t>(N);
  WindowSpec w;
  w.w_min = geom.y_min() - static_cast<double>(pad) * h;
  w.n_w = pad + image_cells + 1 + (kind == DataKind::Differential ? pad : 0);
  return w;
}

namespace {

double erf_segment(const Inhomogeneity& g, double y0, double z0, double dy, double dz,
                   double length) {
  // |p(t) - c|² = (t + b)² + r², so the Gaussian factorizes along the leg.
  const double ry = y0 - g.y0;
  const double rz = z0 - g.z0;
  const double b = ry * dy + rz * dz;
  const double perp2 = std::max(0.0, ry * ry + rz * rz - b * b);
  const double s = g.sigma;
  return g.amplitude * std::exp(-perp2 / (s * s)) * s * 0.5 * std::sqrt(std::numbers::pi) *
         (std::erf((length + b) / s) - std::erf(b / s));
}

double clipped_length(const Inhomogeneity& sq, double y0, double z0, double dy, double dz,
                      double length) {
  double t0 = 0.0;
  double t1 = length;
  const double half = 0.5 * sq.side_length;
  auto clip = [&](double origin, double dir, double lo, double hi) {
    if (dir == 0.0) return origin >= lo && origin <= hi;
    double a = (lo - origin) / dir;
    double b = (hi - origin) / dir;
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
    return t0 <= t1;
  };
  if (!clip(y0, dy, sq.y0 - half, sq.y0 + half)) return 0.0;
  if (!clip(z0, dz, sq.z0 - half, sq.z0 + half)) return 0.0;
  return sq.amplitude * std::max(0.0, t1 - t0);
}

double analytic_segment(const std::vector<Inhomogeneity>& items, double y0, double z0, double dy,
                        double dz, double length) {
  double sum = 0.0;
  for (const auto& item : items) {
    sum += item.kind == ShapeKind::Gaussian ? erf_segment(item, y0, z0, dy, dz, length)
                                            : clipped_length(item, y0, z0, dy, dz, length);
  }
  return sum;
}

// Arc lengths in (0, length) where the leg crosses a square edge line, so
// Simpson never straddles a jump.
std::vector<double> square_crossings(const MediumModel& model, double y0, double z0, double dy,
                                     double dz, double length) {
  std::vector<double> out;
  auto add = [&](double origin, double dir, double edge) {
    if (dir == 0.0) return;
    const double t = (edge - origin) / dir;
    if (t > 0.0 && t < length) out.push_back(t);
  };
  for (const auto* list : {&model.absorbers, &model.scatterers}) {
    for (const auto& item : *list) {
      if (item.kind != ShapeKind::Square) continue;
      const double half = 0.5 * item.side_length;
      add(y0, dy, item.y0 - half);
      add(y0, dy, item.y0 + half);
      add(z0, dz, item.z0 - half);
      add(z0, dz, item.z0 + half);
    }
  }
  return out;
}

double ray_integral(const MediumModel& model, const BrokenRay& ray, const SlabGeometry& geom,
                    const ForwardOptions& options, double h) {
  if (options.method == ForwardMethod::Analytic) {
    return analytic_ray_integral(model, Coefficient::Total, ray, geom);
  }
  const double step = options.quad_step > 0.0 ? options.quad_step : 0.25 * h;
  auto mu_t = [&model](double y, double z) { return eval_mu(model, Coefficient::Total, y, z); };
  check_ray(ray, geom);
  const auto [l1, l2] = segment_lengths(ray.delta, geom);
  const double side = ray.family == RayFamily::A ? 1.0 : -1.0;
  const double sy = side * std::sin(geom.theta());
  const double sz = std::cos(geom.theta());
  return split_segment_integral(mu_t, ray.w, 0.0, 0.0, 1.0, l1, step,
                                square_crossings(model, ray.w, 0.0, 0.0, 1.0, l1)) +
         split_segment_integral(mu_t, ray.w, l1, sy, sz, l2, step,
                                square_crossings(model, ray.w, l1, sy, sz, l2));
}

template <class Sample>
DataFunction fill(DataKind kind, const SlabGeometry& geom, int N, const WindowSpec& window,
                  Sample&& sample) {
  DataFunction data(kind, N, window.n_w, window.w_min, geom);
  parallel_for(data.n_delta(), [&](std::size_t n) {
    for (std::size_t j = 0; j < data.n_w; ++j) data.at(j, n) = sample(data.w(j), data.delta(n));
  });
  return data;
}

} // namespace

double analytic_ray_integral(const MediumModel& model, Coefficient which, const BrokenRay& ray,
                             const SlabGeometry& geom) {
  check_ray(ray, geom);
  const auto [l1, l2] = segment_lengths(ray.delta, geom);
  const double side = ray.family == RayFamily::A ? 1.0 : -1.0;
  const double sy = side * std::sin(geom.theta());
  const double cz = std::cos(geom.theta());
  double sum = model.background(which) * (l1 + l2);
  auto add = [&](const std::vector<Inhomogeneity>& items) {
    sum += analytic_segment(items, ray.w, 0.0, 0.0, 1.0, l1);
    sum += analytic_segment(items, ray.w, l1, sy, cz, l2);
  };
  if (which != Coefficient::Absorption) add(model.scatterers);
  if (which != Coefficient::Scattering) add(model.absorbers);
  return sum;
}

DataFunction simulate_uniform(const MediumModel& model, const SlabGeometry& geom, int N,
                              const WindowSpec& window, const ForwardOptions& options) {
  if (!model.scatterers.empty()) {
    throw PreconditionError("medium has scattering inhomogeneities; use simulate_full");
  }
  model.validate();
  const double h = geom.delta_max() / N;
  return fill(DataKind::Single, geom, N, window, [&](double w, double delta) {
    return ray_integral(model, BrokenRay{w, delta, RayFamily::A}, geom, options, h);
  });
}

DataFunction simulate_full(const MediumModel& model, const SlabGeometry& geom, RayFamily family,
                           int N, const WindowSpec& window, const ForwardOptions& options) {
  model.validate();
  const double h = geom.delta_max() / N;
  return fill(DataKind::Single, geom, N, window, [&](double w, double delta) {
    const BrokenRay ray{w, delta, family};
    const Point r = vertex(ray, geom);
    const double mu_s = eval_mu(model, Coefficient::Scattering, r.y, r.z);
    if (!(mu_s > 0.0)) throw DomainError("scattering coefficient not positive at a ray vertex");
    return ray_integral(model, ray, geom, options, h) - std::log(mu_s / model.bar_mu_s);
  });
}

DataFunction differential(const DataFunction& phi_a, const DataFunction& phi_b) {
  if (!phi_a.same_grid(phi_b)) throw DomainError("differential data needs identical grids");
  if (phi_a.kind != DataKind::Single || phi_b.kind != DataKind::Single) {
    throw PreconditionError("differential data is formed from single-family data");
  }
  DataFunction d = phi_a;
  d.kind = DataKind::Differential;
  for (std::size_t n = 0; n < d.values.size(); ++n) d.values[n] -= phi_b.values[n];
  return d;
}

DataFunction subtract_background(const DataFunction& data, double bar_mu_t) {
  if (data.kind == DataKind::Differential) return data;
  DataFunction out = data;
  const SlabGeometry geom(data.L, data.theta, 0.0, 1.0);
  for (std::size_t n = 0; n < data.n_delta(); ++n) {
    const auto [l1, l2] = segment_lengths(data.delta(n), geom);
    const double base = bar_mu_t * (l1 + l2);
    for (std::size_t j = 0; j < data.n_w; ++j) out.at(j, n) -= base;
  }
  return out;
}

SlabGeometry geometry_of(const DataFunction& data, double y_min, double y_max) {
  return SlabGeometry(data.L, data.theta, y_min, y_max);
}

} // namespace brt
