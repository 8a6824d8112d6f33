#include "brt/phantoms.hpp"

#include <cmath>
#include <numbers>

#include "brt/errors.hpp"
#include "brt/parallel.hpp"

namespace brt {

Inhomogeneity Inhomogeneity::square(double y0, double z0, double side, double amplitude) {
  Inhomogeneity s{ShapeKind::Square, y0, z0, side, 0.0, amplitude};
  s.validate();
  return s;
}

Inhomogeneity Inhomogeneity::gaussian(double y0, double z0, double sigma, double amplitude) {
  Inhomogeneity g{ShapeKind::Gaussian, y0, z0, 0.0, sigma, amplitude};
  g.validate();
  return g;
}

void Inhomogeneity::validate() const {
  if (!std::isfinite(amplitude) || !std::isfinite(y0) || !std::isfinite(z0)) {
    throw DomainError("inhomogeneity parameters must be finite");
  }
  if (kind == ShapeKind::Square && !(side_length > 0.0)) {
    throw DomainError("square side length must be positive");
  }
  if (kind == ShapeKind::Gaussian && !(sigma > 0.0)) {
    throw DomainError("Gaussian width must be positive");
  }
}

double Inhomogeneity::value(double y, double z) const {
  if (kind == ShapeKind::Square) {
    const double half = 0.5 * side_length;
    return (std::abs(y - y0) <= half && std::abs(z - z0) <= half) ? amplitude : 0.0;
  }
  const double dy = y - y0;
  const double dz = z - z0;
  return amplitude * std::exp(-(dy * dy + dz * dz) / (sigma * sigma));
}

double MediumModel::background(Coefficient which) const {
  switch (which) {
  case Coefficient::Total: return bar_mu_t();
  case Coefficient::Scattering: return bar_mu_s;
  case Coefficient::Absorption: return bar_mu_a;
  }
  return 0.0;
}

void MediumModel::validate() const {
  if (!std::isfinite(bar_mu_s) || !std::isfinite(bar_mu_a)) {
    throw DomainError("background coefficients must be finite");
  }
  if (!(bar_mu_s > 0.0)) throw DomainError("background scattering must be positive");
  for (const auto& a : absorbers) a.validate();
  for (const auto& s : scatterers) s.validate();
}

double eval_mu(const MediumModel& model, Coefficient which, double y, double z) {
  double scat = 0.0;
  double abs = 0.0;
  if (which != Coefficient::Absorption) {
    for (const auto& s : model.scatterers) scat += s.value(y, z);
  }
  if (which != Coefficient::Scattering) {
    for (const auto& a : model.absorbers) abs += a.value(y, z);
  }
  return model.background(which) + scat + abs;
}

ScalarGrid rasterize(const MediumModel& model, Coefficient which, const GridSpec& spec) {
  ScalarGrid grid(spec);
  parallel_for(spec.nz, [&](std::size_t i) {
    const double z = spec.z(i);
    for (std::size_t j = 0; j < spec.ny; ++j) grid.at(j, i) = eval_mu(model, which, spec.y(j), z);
  });
  return grid;
}

void check_positive_scattering(const MediumModel& model, const GridSpec& spec) {
  for (std::size_t i = 0; i < spec.nz; ++i) {
    for (std::size_t j = 0; j < spec.ny; ++j) {
      if (!(eval_mu(model, Coefficient::Scattering, spec.y(j), spec.z(i)) > 0.0)) {
        throw DomainError("scattering coefficient is not positive inside the image");
      }
    }
  }
}

GridSpec image_grid(const SlabGeometry& geom, int N) {
  if (N < 1) throw DomainError("N must be positive");
  const double h = geom.delta_max() / N;
  const double span = (geom.y_max() - geom.y_min()) / h;
  // Windows that are not a whole number of steps are widened to the next node.
  const auto cells = static_cast<std::size_t>(std::ceil(span - 1e-9));
  GridSpec spec;
  spec.ny = cells + 1;
  spec.nz = static_cast<std::size_t>(N) + 1;
  spec.y_min = geom.y_min();
  spec.y_max = geom.y_min() + static_cast<double>(cells) * h;
  spec.z_min = 0.0;
  spec.z_max = geom.L();
  return spec;
}

Scene make_preset(const std::string& name, int N, double sigma_cells, double theta) {
  constexpr double L = 1.0;
  if (N < 1) throw DomainError("N must be positive");
  const double h = L * std::tan(theta) / N;
  const double sigma = sigma_cells * h;
  if (name == "square" || name == "fig2") {
    MediumModel m{0.5, 0.5, {}, {}};
    m.absorbers.push_back(Inhomogeneity::square(L, 0.5 * L, 0.5 * L, m.bar_mu_t()));
    return {SlabGeometry(L, theta, 0.0, 3.0 * L), m};
  }
  if (name == "gaussian" || name == "fig3") {
    MediumModel m{0.5, 0.5, {}, {}};
    m.absorbers.push_back(Inhomogeneity::gaussian(1.5 * L, 0.5 * L, sigma, m.bar_mu_t()));
    return {SlabGeometry(L, theta, 0.0, 3.0 * L), m};
  }
  if (name == "fig5" || name == "fig7") {
    const double bar_s = 2.4 / L;
    const double bar_a = (name == "fig5" ? 0.24 : 2.4) / L;
    MediumModel m{bar_s, bar_a, {}, {}};
    m.scatterers.push_back(Inhomogeneity::gaussian(3.125 * L, 0.5 * L, sigma, bar_s));
    m.absorbers.push_back(Inhomogeneity::gaussian(0.875 * L, 0.5 * L, sigma, bar_a));
    // The scatterer sits at 3.125L, so the window reaches 4L to contain it.
    return {SlabGeometry(L, theta, 0.0, 4.0 * L), m};
  }
  if (name == "constant") {
    return {SlabGeometry(L, theta, 0.0, 3.0 * L), MediumModel{0.5, 0.5, {}, {}}};
  }
  throw PreconditionError("unknown preset '" + name + "'");
}

} // namespace brt
