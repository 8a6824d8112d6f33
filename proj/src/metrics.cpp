#include "brt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "brt/errors.hpp"

namespace brt {

namespace {

double trapezoid_weight(const GridSpec& s, std::size_t j, std::size_t i) {
  const double wy = (j == 0 || j + 1 == s.ny) ? 0.5 : 1.0;
  const double wz = (i == 0 || i + 1 == s.nz) ? 0.5 : 1.0;
  return wy * wz * s.dy() * s.dz();
}

} // namespace

Discrepancy compare(const ScalarGrid& model, const ScalarGrid& recon, const CompareOptions& options) {
  const GridSpec& s = model.spec();
  if (!s.congruent(recon.spec())) throw DomainError("compared grids are not congruent");
  double contrast = 0.0;
  for (double v : model.values()) contrast = std::max(contrast, std::abs(v - options.background));
  const double level = options.threshold * contrast;

  Discrepancy d;
  double sum_sq = 0.0;
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < s.nz; ++i) {
    for (std::size_t j = 0; j < s.ny; ++j) {
      const double m = model.at(j, i);
      const double xi = std::abs(m - recon.at(j, i));
      sum_sq += trapezoid_weight(s, j, i) * xi * xi;
      d.max_abs = std::max(d.max_abs, xi);
      if (m != 0.0) d.max_rel = std::max(d.max_rel, xi / std::abs(m));
      if (contrast > 0.0 && xi > level) ++flagged;
    }
  }
  d.l2 = std::sqrt(sum_sq);
  d.artifact_support = static_cast<double>(flagged) * s.dy() * s.dz();
  return d;
}

std::string summary_line(const Discrepancy& d) {
  std::ostringstream os;
  os.precision(10);
  os << "l2=" << d.l2 << " max_abs=" << d.max_abs << " max_rel=" << d.max_rel
     << " artifact_support=" << d.artifact_support;
  return os.str();
}

Profile cross_section(const ScalarGrid& grid, Axis axis, double y, double z) {
  const GridSpec& s = grid.spec();
  constexpr double slack = 1e-9;
  if (y < s.y_min - slack || y > s.y_max + slack || z < s.z_min - slack || z > s.z_max + slack) {
    throw DomainError("cross-section point outside the grid");
  }
  const auto nearest = [](double x, double lo, double step, std::size_t count) {
    const auto idx = static_cast<long>(std::lround((x - lo) / step));
    return static_cast<std::size_t>(std::clamp<long>(idx, 0, static_cast<long>(count) - 1));
  };
  Profile p;
  if (axis == Axis::Y) {
    const std::size_t i = nearest(z, s.z_min, s.dz(), s.nz);
    for (std::size_t j = 0; j < s.ny; ++j) {
      p.coords.push_back(s.y(j));
      p.values.push_back(grid.at(j, i));
    }
  } else {
    const std::size_t j = nearest(y, s.y_min, s.dy(), s.ny);
    for (std::size_t i = 0; i < s.nz; ++i) {
      p.coords.push_back(s.z(i));
      p.values.push_back(grid.at(j, i));
    }
  }
  return p;
}

double relative_l2(const ScalarGrid& a, const ScalarGrid& b, const ScalarGrid& ref, double y_lo,
                   double y_hi) {
  const GridSpec& s = a.spec();
  if (!s.congruent(b.spec()) || !s.congruent(ref.spec())) throw DomainError("grid mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < s.nz; ++i) {
    for (std::size_t j = 0; j < s.ny; ++j) {
      const double y = s.y(j);
      if (y < y_lo - 1e-12 || y > y_hi + 1e-12) continue;
      const double w = trapezoid_weight(s, j, i);
      const double d = a.at(j, i) - b.at(j, i);
      num += w * d * d;
      den += w * ref.at(j, i) * ref.at(j, i);
    }
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

} // namespace brt
