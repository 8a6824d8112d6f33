#include "brt/invert_uniform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "brt/errors.hpp"
#include "brt/parallel.hpp"
#include "brt/phantoms.hpp"
#include "brt/stencils.hpp"

namespace brt {

namespace detail {

void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const auto nn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nn + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const auto kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = nn * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

} // namespace detail

namespace {

constexpr cplx kI{0.0, 1.0};

// ∫_0^z e^{iωℓ} g(ℓ) dℓ at every node, cumulative trapezoid with end-slope corrections.
// Weights for ∫_0^{dz} e^{iωt} P(t) dt where P is the cubic through nodes at
// t = (r + p)·dz, p = 0..3.
std::array<cplx, 4> panel_weights(int r, double omega, double dz) {
  constexpr std::size_t kPoints = 16;
  std::vector<double> x;
  std::vector<double> wx;
  detail::gauss_legendre(kPoints, x, wx);
  std::array<cplx, 4> w{};
  for (std::size_t g = 0; g < kPoints; ++g) {
    const double t = 0.5 * (x[g] + 1.0);
    const cplx kernel = std::polar(0.5 * wx[g] * dz, omega * t * dz);
    for (int p = 0; p < 4; ++p) {
      double basis = 1.0;
      for (int q = 0; q < 4; ++q) {
        if (q != p) basis *= (t - static_cast<double>(r + q)) / static_cast<double>(p - q);
      }
      w[static_cast<std::size_t>(p)] += kernel * basis;
    }
  }
  return w;
}

// Running ∫_0^{z_i} e^{iωz} g dz; the oscillatory factor is integrated exactly
// against a local cubic interpolant of g, so accuracy does not degrade when
// ω·dz is large.
std::vector<cplx> cumulative_oscillatory(std::span<const cplx> g, double omega, double dz) {
  const std::size_t n = g.size();
  std::vector<cplx> out(n, cplx{});
  if (n < 4) {
    for (std::size_t i = 1; i < n; ++i) {
      const cplx f0 = std::polar(1.0, omega * dz * static_cast<double>(i - 1)) * g[i - 1];
      const cplx f1 = std::polar(1.0, omega * dz * static_cast<double>(i)) * g[i];
      out[i] = out[i - 1] + 0.5 * dz * (f0 + f1);
    }
    return out;
  }
  const std::array<std::array<cplx, 4>, 3> weights{panel_weights(0, omega, dz),
                                                   panel_weights(-1, omega, dz),
                                                   panel_weights(-2, omega, dz)};
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t start = std::min(i >= 2 ? i - 2 : 0, n - 4);
    const auto& w = weights[(i - 1) - start];
    cplx panel = 0.0;
    for (std::size_t p = 0; p < 4; ++p) panel += w[p] * g[start + p];
    out[i] = out[i - 1] + std::polar(1.0, omega * dz * static_cast<double>(i - 1)) * panel;
  }
  return out;
}

// Weights w_p with ∫_0^{d·dz} e^{iωt} P(t) dt = Σ w_p F_p for the degree-d
// interpolant P through F_0..F_d at t = p·dz.
std::vector<cplx> filon_weights(std::size_t degree, double omega, double dz) {
  const double width = static_cast<double>(degree) * dz;
  const auto points = static_cast<std::size_t>(24 + std::ceil(std::abs(omega) * width));
  std::vector<double> x;
  std::vector<double> wx;
  detail::gauss_legendre(points, x, wx);
  std::vector<cplx> w(degree + 1, cplx{});
  for (std::size_t g = 0; g < points; ++g) {
    const double t = 0.5 * (x[g] + 1.0) * static_cast<double>(degree); // in units of dz
    const cplx kernel = std::polar(0.5 * wx[g] * width, omega * t * dz);
    for (std::size_t p = 0; p <= degree; ++p) {
      double basis = 1.0;
      for (std::size_t r = 0; r <= degree; ++r) {
        if (r != p) {
          basis *= (t - static_cast<double>(r)) / (static_cast<double>(p) - static_cast<double>(r));
        }
      }
      w[p] += kernel * basis;
    }
  }
  return w;
}

cplx filon_integral(std::span<const cplx> F, double omega, double dz) {
  constexpr std::size_t kDegree = 4;
  const std::size_t intervals = F.size() - 1;
  std::array<std::vector<cplx>, kDegree + 1> cache;
  cplx sum{};
  for (std::size_t start = 0; start < intervals;) {
    const std::size_t deg = std::min(kDegree, intervals - start);
    if (cache[deg].empty()) cache[deg] = filon_weights(deg, omega, dz);
    cplx panel{};
    for (std::size_t p = 0; p <= deg; ++p) panel += cache[deg][p] * F[start + p];
    sum += std::polar(1.0, omega * dz * static_cast<double>(start)) * panel;
    start += deg;
  }
  return sum;
}

std::vector<cplx> gauge_profile(std::size_t size, double q, double dz) {
  std::vector<cplx> g(size);
  for (std::size_t i = 0; i < size; ++i) g[i] = std::polar(1.0, q * dz * static_cast<double>(i));
  return g;
}

} // namespace

FilterContext::FilterContext(double theta_) : theta(theta_) {
  if (!(theta_ > 0.0 && theta_ < std::numbers::pi / 2)) throw DomainError("theta outside (0, pi/2)");
  lambda = 1.0 / std::tan(0.5 * theta_);
  c = std::cos(theta_);
  kappa = c / (1.0 - c);
}

// Three-point first-derivative weights at offsets o (in steps), exact for
// 1, x and e^{iθx}; θ = 0 falls back to the polynomial stencil.
static std::array<cplx, 3> fitted_first_derivative(std::array<int, 3> o, double theta) {
  std::array<cplx, 3> e{};
  for (std::size_t p = 0; p < 3; ++p) {
    e[p] = std::abs(theta) < 1e-3 ? cplx(static_cast<double>(o[p] * o[p]))
                                  : std::polar(1.0, theta * o[p]);
  }
  const cplx target = std::abs(theta) < 1e-3 ? cplx(0.0) : kI * theta;
  // Rows: Σw = 0, Σw·o = 1, Σw·e = target; solved by Cramer's rule.
  auto det = [](const std::array<std::array<cplx, 3>, 3>& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  std::array<std::array<cplx, 3>, 3> a{};
  for (std::size_t p = 0; p < 3; ++p) {
    a[0][p] = 1.0;
    a[1][p] = static_cast<double>(o[p]);
    a[2][p] = e[p];
  }
  const std::array<cplx, 3> rhs{0.0, 1.0, target};
  const cplx base = det(a);
  std::array<cplx, 3> w{};
  for (std::size_t p = 0; p < 3; ++p) {
    auto b = a;
    for (std::size_t r = 0; r < 3; ++r) b[r][p] = rhs[r];
    w[p] = det(b) / base;
  }
  return w;
}

std::vector<cplx> filter_H_column(std::span<const cplx> column, double k, double h,
                                  DeltaStencil stencil) {
  if (column.size() < 3) throw DomainError("filter needs at least three Δ samples");
  const std::size_t n = column.size();
  if (stencil == DeltaStencil::Plain) {
    auto d = detail::first_derivative(column, h);
    for (std::size_t i = 0; i < n; ++i) d[i] += kI * k * column[i];
    return d;
  }
  std::vector<cplx> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = std::polar(1.0, k * h * static_cast<double>(i)) * column[i];
  // Stencils exact for 1, Δ and e^{ikΔ}, so a Δ-independent ψ̃ gives ikψ̃
  // identically at the ends and inside alike.
  const double kh = k * h;
  const auto left = fitted_first_derivative({0, 1, 2}, kh);
  const auto centre = fitted_first_derivative({-1, 0, 1}, kh);
  const auto right = fitted_first_derivative({-2, -1, 0}, kh);
  std::vector<cplx> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t start = std::clamp<std::size_t>(i, 1, n - 2) - 1;
    const auto& w = i == 0 ? left : (i + 1 == n ? right : centre);
    const cplx sum = w[0] * u[start] + w[1] * u[start + 1] + w[2] * u[start + 2];
    d[i] = std::polar(1.0, -kh * static_cast<double>(i)) * sum / h;
  }
  return d;
}

cplx filter_H(const SpectralData& spec, std::size_t m, double z, const SlabGeometry& geom,
              DeltaStencil stencil) {
  if (!(z >= 0.0 && z <= geom.L())) throw DomainError("depth outside [0, L]");
  if (m >= spec.modes()) throw DomainError("mode index out of range");
  const double k = spec.k_values[m];
  const auto H = filter_H_column(spec.column(m), k, spec.h, stencil);
  const double delta = (geom.L() - z) * std::tan(geom.theta());
  const double f = std::clamp(delta / spec.h, 0.0, static_cast<double>(spec.n_delta - 1));
  const auto n0 = std::min(static_cast<std::size_t>(f), spec.n_delta - 2);
  const double t = f - static_cast<double>(n0);
  if (stencil == DeltaStencil::Plain) return (1.0 - t) * H[n0] + t * H[n0 + 1];
  // Interpolate the derivative of e^{ikΔ}ψ̃, then restore the phase.
  const cplx a = std::polar(1.0, k * spec.h * static_cast<double>(n0)) * H[n0];
  const cplx b = std::polar(1.0, k * spec.h * static_cast<double>(n0 + 1)) * H[n0 + 1];
  return std::polar(1.0, -k * delta) * ((1.0 - t) * a + t * b);
}

std::vector<cplx> invert_k_column(const SpectralData& spec, std::size_t m,
                                  const SlabGeometry& geom, DeltaStencil stencil) {
  if (m >= spec.modes()) throw DomainError("mode index out of range");
  const FilterContext ctx(geom.theta());
  const double k = spec.k_values[m];
  const std::size_t N = spec.n_delta - 1;
  const double dz = geom.L() / static_cast<double>(N);
  const auto H_delta = filter_H_column(spec.column(m), k, spec.h, stencil);
  // z_i = i·L/N sits on Δ_{N-i}.
  std::vector<cplx> H(N + 1);
  for (std::size_t i = 0; i <= N; ++i) H[i] = H_delta[N - i];

  const double omega = ctx.lambda * k;
  const auto cumulative = cumulative_oscillatory(H, omega, dz);
  std::vector<cplx> out(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    const double z = dz * static_cast<double>(i);
    out[i] = ctx.lambda * (H[i] - kI * k * ctx.lambda * std::polar(1.0, -omega * z) * cumulative[i]);
  }
  return out;
}

std::vector<cplx> inv_solution(std::span<const cplx> F, double q, const FilterContext& ctx,
                               double dz) {
  const std::size_t n = F.size();
  if (n < 3) throw DomainError("profile needs at least three samples");
  // G = F' - iqF = e^{iqz} (e^{-iqz} F)'
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::polar(1.0, -q * dz * static_cast<double>(i)) * F[i];
  auto G = detail::first_derivative(std::span<const cplx>(v), dz);
  for (std::size_t i = 0; i < n; ++i) G[i] *= std::polar(1.0, q * dz * static_cast<double>(i));

  const double omega = ctx.kappa * q;
  const auto cumulative = cumulative_oscillatory(G, omega, dz);
  std::vector<cplx> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = dz * static_cast<double>(i);
    f[i] = -ctx.kappa * (G[i] - kI * omega * std::polar(1.0, -omega * z) * cumulative[i]);
  }
  return f;
}

cplx consistency_residual(std::span<const cplx> F, double q, const FilterContext& ctx, double dz) {
  if (F.size() < 2) throw DomainError("profile needs at least two samples");
  const double omega = ctx.kappa * q;
  const double L = dz * static_cast<double>(F.size() - 1);
  const cplx integral = filon_integral(F, omega, dz);
  return F.back() - std::polar(1.0, -omega * L) * (ctx.c * F.front() + kI * omega * integral);
}

ConsistencySplit consistency_decompose(std::span<const cplx> F, double q,
                                       const FilterContext& ctx, double dz) {
  ConsistencySplit out;
  out.regular.assign(F.begin(), F.end());
  const auto gauge = gauge_profile(F.size(), q, dz);
  const cplx gauge_residual = consistency_residual(gauge, q, ctx, dz);
  if (std::abs(gauge_residual) < 1e-12) {
    out.degenerate = true;
    return out;
  }
  out.a = consistency_residual(F, q, ctx, dz) / gauge_residual;
  for (std::size_t i = 0; i < F.size(); ++i) out.regular[i] -= out.a * gauge[i];
  return out;
}

std::vector<cplx> profile_from_column(std::span<const cplx> column) {
  return {column.rbegin(), column.rend()};
}

UniformResult reconstruct_uniform(const DataFunction& data, const SlabGeometry& geom,
                                  double bar_mu_t, const UniformOptions& options) {
  if (data.kind != DataKind::Single) throw PreconditionError("uniform inversion needs single-family data");
  const GridSpec grid = image_grid(geom, data.N);
  SpectralData spec = transform_w(subtract_background(data, bar_mu_t), options.half_modes);
  const double period = 2.0 * spec.half_modes * spec.h;
  if (grid.y_min < data.w_min - 1e-9 || grid.y_max > data.w_min + period + 1e-9) {
    throw DomainError("image window is not covered by the data window");
  }

  const FilterContext ctx(geom.theta());
  const double dz = geom.L() / data.N;
  UniformResult result;
  if (options.consistency_filter) result.gauge.assign(spec.modes(), cplx{});

  ModeProfiles profiles{spec.k_values, grid.nz, std::vector<cplx>(spec.modes() * grid.nz)};
  parallel_for(spec.modes(), [&](std::size_t m) {
    if (options.consistency_filter) {
      const auto F = profile_from_column(spec.column(m));
      const auto split = consistency_decompose(F, ctx.q(spec.k_values[m]), ctx, dz);
      result.gauge[m] = split.a;
      auto col = spec.column(m);
      std::copy(split.regular.rbegin(), split.regular.rend(), col.begin());
    }
    const auto column = invert_k_column(spec, m, geom, options.stencil);
    std::copy(column.begin(), column.end(), profiles.values.begin() + static_cast<long>(m * grid.nz));
  });

  auto inverse = inverse_transform_k(profiles, grid);
  result.mu_t = inverse.grid.plus(bar_mu_t);
  result.imag_ratio = inverse.imag_ratio;
  return result;
}

ScalarGrid backproject_realspace(const DataFunction& data, const SlabGeometry& geom,
                                 double bar_mu_t) {
  if (data.kind != DataKind::Single) throw PreconditionError("real-space inversion needs single-family data");
  const GridSpec grid = image_grid(geom, data.N);
  if (grid.y_min < data.w_min - 1e-9 || grid.y_max > data.w_max() + 1e-9) {
    throw DomainError("image window is not covered by the data window");
  }
  const DataFunction fluct = subtract_background(data, bar_mu_t);
  const FilterContext ctx(geom.theta());
  const std::size_t N = static_cast<std::size_t>(data.N);
  const double h = data.h;
  const double dz = geom.L() / data.N;

  // I(y, Δ_n) = ∫_{Δ_n}^{Δmax} δψ(y + κ(ℓ - Δ_n), ℓ) dℓ, trapezoid over the Δ nodes
  // with end-slope corrections once at least three nodes are available.
  auto shifted_integral = [&](double y, std::size_t n) {
    if (n == N) return 0.0;
    const std::size_t count = N - n + 1;
    double sum = 0.0;
    double g0 = 0.0, g1 = 0.0, g2 = 0.0, gm2 = 0.0, gm1 = 0.0, gm = 0.0;
    for (std::size_t p = n; p <= N; ++p) {
      const double g = fluct.interp_w(y + ctx.kappa * (fluct.delta(p) - fluct.delta(n)), p);
      const double weight = (p == n || p == N) ? 0.5 : 1.0;
      sum += weight * g;
      const std::size_t r = p - n;
      if (r == 0) g0 = g;
      if (r == 1) g1 = g;
      if (r == 2) g2 = g;
      if (r + 3 == count) gm2 = g;
      if (r + 2 == count) gm1 = g;
      if (r + 1 == count) gm = g;
    }
    sum *= h;
    if (count >= 3) {
      const double slope_a = (-3.0 * g0 + 4.0 * g1 - g2) / (2.0 * h);
      const double slope_b = (3.0 * gm - 4.0 * gm1 + gm2) / (2.0 * h);
      sum -= h * h / 12.0 * (slope_b - slope_a);
    }
    return sum;
  };

  ScalarGrid out(grid);
  parallel_for(grid.nz, [&](std::size_t i) {
    const std::size_t n = N - i;
    const double z = dz * static_cast<double>(i);
    for (std::size_t j = 0; j < grid.ny; ++j) {
      const double y = grid.y(j);
      double d_delta = 0.0;
      if (n > 0 && n < N) {
        d_delta = (fluct.interp_w(y, n + 1) - fluct.interp_w(y, n - 1)) / (2.0 * h);
      } else if (n == 0) {
        d_delta = (-3.0 * fluct.interp_w(y, 0) + 4.0 * fluct.interp_w(y, 1) - fluct.interp_w(y, 2)) / (2.0 * h);
      } else {
        d_delta = (3.0 * fluct.interp_w(y, N) - 4.0 * fluct.interp_w(y, N - 1) + fluct.interp_w(y, N - 2)) / (2.0 * h);
      }
      const double d_y = (fluct.interp_w(y + h, n) - fluct.interp_w(y - h, n)) / (2.0 * h);
      const double far = y + ctx.lambda * z;
      const double d_y_far = (fluct.interp_w(far + h, N) - fluct.interp_w(far - h, N)) / (2.0 * h);
      const double curvature = (shifted_integral(y + h, n) - 2.0 * shifted_integral(y, n) +
                                shifted_integral(y - h, n)) / (h * h);
      out.at(j, i) = bar_mu_t + ctx.lambda * (d_delta - (1.0 + ctx.kappa) * d_y +
                                              ctx.kappa * d_y_far -
                                              ctx.kappa * (1.0 + ctx.kappa) * curvature);
    }
  });
  return out;
}

} // namespace brt
