#include "brt/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "brt/errors.hpp"

namespace brt {

namespace {

template <class T>
T read_token(std::istream& is, const char* what) {
  T value{};
  if (!(is >> value)) throw FormatError(std::string("malformed or missing ") + what);
  return value;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write " + path);
  os.precision(17);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot read " + path);
  return is;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string shape_line(const Inhomogeneity& s) {
  std::ostringstream os;
  os.precision(17);
  if (s.kind == ShapeKind::Square) {
    os << "square " << s.y0 << ' ' << s.z0 << ' ' << s.side_length << ' ' << s.amplitude;
  } else {
    os << "gaussian " << s.y0 << ' ' << s.z0 << ' ' << s.sigma << ' ' << s.amplitude;
  }
  return os.str();
}

Inhomogeneity parse_shape(const std::string& text) {
  std::istringstream is(text);
  const auto kind = read_token<std::string>(is, "inhomogeneity kind");
  const auto y0 = read_token<double>(is, "inhomogeneity y0");
  const auto z0 = read_token<double>(is, "inhomogeneity z0");
  const auto size = read_token<double>(is, "inhomogeneity size");
  const auto amplitude = read_token<double>(is, "inhomogeneity amplitude");
  try {
    if (kind == "square") return Inhomogeneity::square(y0, z0, size, amplitude);
    if (kind == "gaussian") return Inhomogeneity::gaussian(y0, z0, size, amplitude);
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
  throw FormatError("unknown inhomogeneity kind '" + kind + "'");
}

} // namespace

void write_data(std::ostream& os, const DataFunction& data) {
  const auto old = os.precision(17);
  os << "BRT-DATA v1 " << (data.kind == DataKind::Single ? "single" : "differential") << ' '
     << data.n_w << ' ' << data.N << ' ' << data.w_min << ' ' << data.h << ' ' << data.L << ' '
     << data.theta << '\n';
  for (std::size_t n = 0; n < data.n_delta(); ++n) {
    for (std::size_t j = 0; j < data.n_w; ++j) os << data.at(j, n) << (j + 1 == data.n_w ? '\n' : ' ');
  }
  os.precision(old);
}

DataFunction read_data(std::istream& is) {
  if (read_token<std::string>(is, "magic") != "BRT-DATA" || read_token<std::string>(is, "version") != "v1") {
    throw FormatError("not a BRT-DATA v1 file");
  }
  const auto kind = read_token<std::string>(is, "kind");
  if (kind != "single" && kind != "differential") throw FormatError("unknown data kind '" + kind + "'");
  DataFunction d;
  d.kind = kind == "single" ? DataKind::Single : DataKind::Differential;
  d.n_w = read_token<std::size_t>(is, "n_w");
  d.N = read_token<int>(is, "N");
  d.w_min = read_token<double>(is, "w_min");
  d.h = read_token<double>(is, "h");
  d.L = read_token<double>(is, "L");
  d.theta = read_token<double>(is, "theta");
  if (d.N < 1 || d.n_w < 1 || !(d.h > 0.0) || !(d.L > 0.0)) throw FormatError("invalid BRT-DATA header");
  d.values.resize(d.n_w * d.n_delta());
  for (auto& v : d.values) {
    v = read_token<double>(is, "data value");
    if (!std::isfinite(v)) throw FormatError("non-finite data value");
  }
  return d;
}

void save_data(const std::string& path, const DataFunction& data) {
  auto os = open_out(path);
  write_data(os, data);
}

DataFunction load_data(const std::string& path) {
  auto is = open_in(path);
  return read_data(is);
}

void write_grid(std::ostream& os, const ScalarGrid& grid) {
  const auto old = os.precision(17);
  const GridSpec& s = grid.spec();
  os << "BRT-GRID v1 " << s.ny << ' ' << s.nz << ' ' << s.y_min << ' ' << s.y_max << ' ' << s.z_min
     << ' ' << s.z_max << '\n';
  for (std::size_t i = 0; i < s.nz; ++i) {
    for (std::size_t j = 0; j < s.ny; ++j) os << grid.at(j, i) << (j + 1 == s.ny ? '\n' : ' ');
  }
  os.precision(old);
}

ScalarGrid read_grid(std::istream& is) {
  if (read_token<std::string>(is, "magic") != "BRT-GRID" || read_token<std::string>(is, "version") != "v1") {
    throw FormatError("not a BRT-GRID v1 file");
  }
  GridSpec s;
  s.ny = read_token<std::size_t>(is, "ny");
  s.nz = read_token<std::size_t>(is, "nz");
  s.y_min = read_token<double>(is, "y_min");
  s.y_max = read_token<double>(is, "y_max");
  s.z_min = read_token<double>(is, "z_min");
  s.z_max = read_token<double>(is, "z_max");
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
  std::vector<double> values(s.ny * s.nz);
  for (auto& v : values) v = read_token<double>(is, "grid value");
  return ScalarGrid(s, std::move(values));
}

void save_grid(const std::string& path, const ScalarGrid& grid) {
  auto os = open_out(path);
  write_grid(os, grid);
}

ScalarGrid load_grid(const std::string& path) {
  auto is = open_in(path);
  return read_grid(is);
}

void write_pgm(std::ostream& os, const ScalarGrid& grid) {
  const auto [lo, hi] = std::minmax_element(grid.values().begin(), grid.values().end());
  const double span = *hi - *lo;
  os << "P2\n" << grid.ny() << ' ' << grid.nz() << "\n255\n";
  for (std::size_t i = 0; i < grid.nz(); ++i) {
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      const double t = span > 0.0 ? (grid.at(j, i) - *lo) / span : 0.0;
      os << static_cast<int>(std::lround(255.0 * t)) << (j + 1 == grid.ny() ? '\n' : ' ');
    }
  }
}

void save_pgm(const std::string& path, const ScalarGrid& grid) {
  auto os = open_out(path);
  write_pgm(os, grid);
}

void write_scene(std::ostream& os, const Scene& scene) {
  const auto old = os.precision(17);
  os << "# broken-ray scene\n"
     << "L = " << scene.geom.L() << '\n'
     << "theta = " << scene.geom.theta() << '\n'
     << "y_min = " << scene.geom.y_min() << '\n'
     << "y_max = " << scene.geom.y_max() << '\n'
     << "bar_mu_s = " << scene.model.bar_mu_s << '\n'
     << "bar_mu_a = " << scene.model.bar_mu_a << '\n';
  for (const auto& a : scene.model.absorbers) os << "absorber = " << shape_line(a) << '\n';
  for (const auto& s : scene.model.scatterers) os << "scatterer = " << shape_line(s) << '\n';
  os.precision(old);
}

Scene read_scene(std::istream& is) {
  std::map<std::string, double> scalars{{"L", 1.0},       {"theta", std::numbers::pi / 4},
                                        {"y_min", 0.0},   {"y_max", 3.0},
                                        {"bar_mu_s", 0.0}, {"bar_mu_a", 0.0}};
  MediumModel model;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "absorber") {
      model.absorbers.push_back(parse_shape(value));
    } else if (key == "scatterer") {
      model.scatterers.push_back(parse_shape(value));
    } else if (scalars.count(key)) {
      std::istringstream vs(value);
      scalars[key] = read_token<double>(vs, key.c_str());
    } else {
      throw FormatError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  model.bar_mu_s = scalars["bar_mu_s"];
  model.bar_mu_a = scalars["bar_mu_a"];
  try {
    model.validate();
    return Scene{SlabGeometry(scalars["L"], scalars["theta"], scalars["y_min"], scalars["y_max"]), model};
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid scene: ") + e.what());
  }
}

void save_scene(const std::string& path, const Scene& scene) {
  auto os = open_out(path);
  write_scene(os, scene);
}

Scene load_scene(const std::string& path) {
  auto is = open_in(path);
  return read_scene(is);
}

void save_profile_csv(const std::string& path, const Profile& profile, const std::string& coord_name) {
  auto os = open_out(path);
  os << coord_name << ",value\n";
  for (std::size_t n = 0; n < profile.coords.size(); ++n) {
    os << profile.coords[n] << ',' << profile.values[n] << '\n';
  }
}

} // namespace brt
