#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace brt::detail {

/// First derivative on a uniform grid: central inside, second-order
/// one-sided at both ends. Needs at least three samples.
template <class T>
std::vector<T> first_derivative(std::span<const T> f, double step) {
  const std::size_t n = f.size();
  std::vector<T> d(n);
  const double inv = 1.0 / (2.0 * step);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv;
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv;
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv;
  return d;
}

/// Second derivative: three-point stencil inside, four-point one-sided
/// (2, -5, 4, -1) at the ends. Needs at least four samples.
template <class T>
std::vector<T> second_derivative(std::span<const T> f, double step) {
  const std::size_t n = f.size();
  std::vector<T> d(n);
  const double inv = 1.0 / (step * step);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv;
  d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv;
  d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * inv;
  return d;
}

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace brt::detail
