#pragma once

#include <cstddef>
#include <vector>

namespace brt {

/// Node positions of an image rectangle. Nodes sit on the corners of the
/// cells, so y_j = y_min + j·dy with j = 0..ny-1 and both ends included.
struct GridSpec {
  std::size_t ny = 2;
  std::size_t nz = 2;
  double y_min = 0.0;
  double y_max = 1.0;
  double z_min = 0.0;
  double z_max = 1.0;

  double dy() const { return (y_max - y_min) / static_cast<double>(ny - 1); }
  double dz() const { return (z_max - z_min) / static_cast<double>(nz - 1); }
  double y(std::size_t j) const { return y_min + static_cast<double>(j) * dy(); }
  double z(std::size_t i) const { return z_min + static_cast<double>(i) * dz(); }

  /// Throws DomainError for fewer than two nodes per axis or unordered extents.
  void validate() const;

  bool congruent(const GridSpec& other) const;
};

/// A coefficient sampled on the (y, z) image rectangle. Values are stored
/// row-major with y varying fastest: values[i·ny + j] is at (y_j, z_i).
class ScalarGrid {
public:
  ScalarGrid() = default;
  explicit ScalarGrid(const GridSpec& spec, double fill = 0.0);
  ScalarGrid(const GridSpec& spec, std::vector<double> values);

  const GridSpec& spec() const { return spec_; }
  std::size_t ny() const { return spec_.ny; }
  std::size_t nz() const { return spec_.nz; }

  double& at(std::size_t j, std::size_t i) { return values_[i * spec_.ny + j]; }
  double at(std::size_t j, std::size_t i) const { return values_[i * spec_.ny + j]; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Bilinear interpolation; points outside the rectangle return `outside`.
  double sample(double y, double z, double outside) const;

  /// Pointwise sum / difference with a congruent grid.
  ScalarGrid operator+(const ScalarGrid& other) const;
  ScalarGrid operator-(const ScalarGrid& other) const;
  ScalarGrid plus(double offset) const;

private:
  GridSpec spec_{};
  std::vector<double> values_;
};

} // namespace brt
