#pragma once

#include <string>
#include <vector>

#include "brt/grid.hpp"

namespace brt {

struct CompareOptions {
  double threshold = 0.02; ///< artifact level, as a fraction of max |model - background|
  double background = 0.0; ///< level subtracted from the model when scaling the threshold
};

/// ξ = model - recon summarized over the grid.
struct Discrepancy {
  double l2 = 0.0;               ///< sqrt(∫ ξ² dy dz), trapezoid weights
  double max_abs = 0.0;          ///< max |ξ|
  double max_rel = 0.0;          ///< max |ξ| / |model| over nodes with model != 0
  double artifact_support = 0.0; ///< dy·dz · #{nodes with |ξ| > threshold·max|model - background|}
};

/// Throws DomainError for grids that are not congruent.
Discrepancy compare(const ScalarGrid& model, const ScalarGrid& recon, const CompareOptions& options = {});

/// One key=value summary line.
std::string summary_line(const Discrepancy& d);

enum class Axis { Y, Z };

struct Profile {
  std::vector<double> coords;
  std::vector<double> values;
};

/// The grid row (Axis::Y, fixed z) or column (Axis::Z, fixed y) nearest to
/// `through`. Throws DomainError when the point lies outside the grid.
Profile cross_section(const ScalarGrid& grid, Axis axis, double y, double z);

/// Weighted relative L² distance ‖a - b‖ / ‖ref‖ over nodes with
/// y in [y_lo, y_hi]; used to compare reconstructions away from the edges.
double relative_l2(const ScalarGrid& a, const ScalarGrid& b, const ScalarGrid& ref, double y_lo,
                   double y_hi);

} // namespace brt
