#include "brt/grid.hpp"

#include <algorithm>
#include <cmath>

#include "brt/errors.hpp"

namespace brt {

void GridSpec::validate() const {
  if (ny < 2 || nz < 2) throw DomainError("grid needs at least two nodes per axis");
  if (!(y_min < y_max) || !(z_min < z_max)) throw DomainError("grid extents must be ordered");
}

bool GridSpec::congruent(const GridSpec& other) const {
  auto same = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  return ny == other.ny && nz == other.nz && same(y_min, other.y_min) &&
         same(y_max, other.y_max) && same(z_min, other.z_min) && same(z_max, other.z_max);
}

ScalarGrid::ScalarGrid(const GridSpec& spec, double fill) : spec_(spec) {
  spec_.validate();
  values_.assign(spec_.ny * spec_.nz, fill);
}

ScalarGrid::ScalarGrid(const GridSpec& spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  spec_.validate();
  if (values_.size() != spec_.ny * spec_.nz) throw DomainError("grid value count mismatch");
}

double ScalarGrid::sample(double y, double z, double outside) const {
  const double fy = (y - spec_.y_min) / spec_.dy();
  const double fz = (z - spec_.z_min) / spec_.dz();
  const double ymax = static_cast<double>(spec_.ny - 1);
  const double zmax = static_cast<double>(spec_.nz - 1);
  constexpr double slack = 1e-9;
  if (fy < -slack || fy > ymax + slack || fz < -slack || fz > zmax + slack) return outside;
  const double cy = std::clamp(fy, 0.0, ymax);
  const double cz = std::clamp(fz, 0.0, zmax);
  const auto j = std::min(static_cast<std::size_t>(cy), spec_.ny - 2);
  const auto i = std::min(static_cast<std::size_t>(cz), spec_.nz - 2);
  const double ty = cy - static_cast<double>(j);
  const double tz = cz - static_cast<double>(i);
  return (1 - tz) * ((1 - ty) * at(j, i) + ty * at(j + 1, i)) +
         tz * ((1 - ty) * at(j, i + 1) + ty * at(j + 1, i + 1));
}

ScalarGrid ScalarGrid::operator+(const ScalarGrid& other) const {
  if (!spec_.congruent(other.spec_)) throw DomainError("grid mismatch");
  ScalarGrid out(*this);
  for (std::size_t n = 0; n < values_.size(); ++n) out.values_[n] += other.values_[n];
  return out;
}

ScalarGrid ScalarGrid::operator-(const ScalarGrid& other) const {
  if (!spec_.congruent(other.spec_)) throw DomainError("grid mismatch");
  ScalarGrid out(*this);
  for (std::size_t n = 0; n < values_.size(); ++n) out.values_[n] -= other.values_[n];
  return out;
}

ScalarGrid ScalarGrid::plus(double offset) const {
  ScalarGrid out(*this);
  for (auto& v : out.values_) v += offset;
  return out;
}

} // namespace brt
