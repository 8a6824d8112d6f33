#include "brt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "brt/errors.hpp"
#include "brt/parallel.hpp"

namespace brt {

std::vector<double> k_grid(double h, int half_modes) {
  if (half_modes < 1 || !(h > 0.0)) throw DomainError("invalid k grid");
  std::vector<double> k(2 * static_cast<std::size_t>(half_modes) + 1);
  const double scale = std::numbers::pi / h;
  for (std::size_t m = 0; m < k.size(); ++m) {
    const auto offset = static_cast<long>(m) - half_modes;
    k[m] = scale * static_cast<double>(offset) / half_modes;
  }
  return k;
}

int default_half_modes(const DataFunction& data) {
  const auto half = static_cast<int>((data.n_w + 1) / 2);
  return std::max(data.N, half);
}

SpectralData transform_w(const DataFunction& data, int half_modes) {
  SpectralData out;
  out.half_modes = half_modes > 0 ? half_modes : default_half_modes(data);
  out.n_delta = data.n_delta();
  out.h = data.h;
  out.k_values = k_grid(data.h, out.half_modes);
  out.values.assign(out.modes() * out.n_delta, cplx{});

  parallel_for(out.modes(), [&](std::size_t m) {
    const double k = out.k_values[m];
    std::vector<cplx> phase(data.n_w);
    for (std::size_t j = 0; j < data.n_w; ++j) phase[j] = std::polar(data.h, k * data.w(j));
    auto col = out.column(m);
    for (std::size_t n = 0; n < out.n_delta; ++n) {
      const double* row = data.values.data() + n * data.n_w;
      double re = 0.0;
      double im = 0.0;
      for (std::size_t j = 0; j < data.n_w; ++j) {
        re += row[j] * phase[j].real();
        im += row[j] * phase[j].imag();
      }
      col[n] = {re, im};
    }
  });
  out.slope_at_zero.assign(out.n_delta, cplx{});
  for (std::size_t n = 0; n < out.n_delta; ++n) {
    double sum = 0.0;
    for (std::size_t j = 0; j < data.n_w; ++j) sum += data.w(j) * data.at(j, n);
    out.slope_at_zero[n] = {0.0, data.h * sum};
  }
  return out;
}

InverseResult inverse_transform_k(const ModeProfiles& mu_tilde, const GridSpec& spec) {
  const std::size_t modes = mu_tilde.k_values.size();
  if (modes < 3 || mu_tilde.nz != spec.nz || mu_tilde.values.size() != modes * spec.nz) {
    throw DomainError("mode profiles do not match the output grid");
  }
  const double dk = mu_tilde.k_values[1] - mu_tilde.k_values[0];
  const double scale = dk / (2.0 * std::numbers::pi);

  ScalarGrid grid(spec);
  std::vector<double> imag(spec.ny * spec.nz, 0.0);
  parallel_for(spec.ny, [&](std::size_t j) {
    const double y = spec.y(j);
    std::vector<cplx> phase(modes);
    for (std::size_t m = 0; m < modes; ++m) {
      const double weight = (m == 0 || m + 1 == modes) ? 0.5 * scale : scale;
      phase[m] = std::polar(weight, -mu_tilde.k_values[m] * y);
    }
    std::vector<double> re(spec.nz, 0.0);
    std::vector<double> im(spec.nz, 0.0);
    for (std::size_t m = 0; m < modes; ++m) {
      const cplx* src = mu_tilde.values.data() + m * spec.nz;
      const double pr = phase[m].real();
      const double pi = phase[m].imag();
      for (std::size_t i = 0; i < spec.nz; ++i) {
        re[i] += src[i].real() * pr - src[i].imag() * pi;
        im[i] += src[i].real() * pi + src[i].imag() * pr;
      }
    }
    for (std::size_t i = 0; i < spec.nz; ++i) {
      grid.at(j, i) = re[i];
      imag[i * spec.ny + j] = im[i];
    }
  });

  double max_re = 0.0;
  double max_im = 0.0;
  for (std::size_t n = 0; n < imag.size(); ++n) {
    max_re = std::max(max_re, std::abs(grid.values()[n]));
    max_im = std::max(max_im, std::abs(imag[n]));
  }
  return {std::move(grid), max_re > 0.0 ? max_im / max_re : 0.0};
}

} // namespace brt
