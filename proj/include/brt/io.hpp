#pragma once

#include <iosfwd>
#include <string>

#include "brt/forward.hpp"
#include "brt/grid.hpp"
#include "brt/metrics.hpp"
#include "brt/phantoms.hpp"

namespace brt {

/// Raised for unreadable or malformed files.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// "BRT-DATA v1 <kind> <n_w> <N> <w_min> <h> <L> <theta>" followed by
// n_w·(N+1) values, w fastest, 17 significant digits.
void write_data(std::ostream& os, const DataFunction& data);
DataFunction read_data(std::istream& is);
void save_data(const std::string& path, const DataFunction& data);
DataFunction load_data(const std::string& path);

// "BRT-GRID v1 <ny> <nz> <y_min> <y_max> <z_min> <z_max>" followed by
// ny·nz values, y fastest.
void write_grid(std::ostream& os, const ScalarGrid& grid);
ScalarGrid read_grid(std::istream& is);
void save_grid(const std::string& path, const ScalarGrid& grid);
ScalarGrid load_grid(const std::string& path);

/// Plain 8-bit PGM (P2) normalized to the grid's own min..max, z = 0 on top.
void write_pgm(std::ostream& os, const ScalarGrid& grid);
void save_pgm(const std::string& path, const ScalarGrid& grid);

/// key = value scene description:
///   L, theta, y_min, y_max, bar_mu_s, bar_mu_a,
///   absorber  = gaussian <y0> <z0> <sigma> <amplitude>
///   scatterer = square <y0> <z0> <side> <amplitude>
/// '#' starts a comment. Inhomogeneity keys may repeat.
void write_scene(std::ostream& os, const Scene& scene);
Scene read_scene(std::istream& is);
void save_scene(const std::string& path, const Scene& scene);
Scene load_scene(const std::string& path);

/// Two-column CSV "coord,value" with a header line.
void save_profile_csv(const std::string& path, const Profile& profile, const std::string& coord_name);

} // namespace brt
