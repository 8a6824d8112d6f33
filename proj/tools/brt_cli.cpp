// brt: phantom / forward / reconstruct / compare front end.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "brt/errors.hpp"
#include "brt/forward.hpp"
#include "brt/invert_diff.hpp"
#include "brt/invert_uniform.hpp"
#include "brt/io.hpp"
#include "brt/metrics.hpp"
#include "brt/phantoms.hpp"

namespace fs = std::filesystem;
using namespace brt;

namespace {

struct RunConfig {
  int N = 120;
  std::optional<double> theta;
  std::string preset;
  double sigma_cells = 30.0;
  std::string phantom;
  std::vector<std::string> data;
  std::string pipeline = "uniform-fourier";
  std::string diff_method = "realspace";
  double quad_step = 0.0;
  bool consistency_filter = false;
  bool verbose = false;
  std::string out = ".";
  std::string model;
  std::string recon;
  double background = 0.0;
  double threshold = 0.02;
  bool n_given = false;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out);
  fs::create_directories(dir);
  return dir;
}

void export_grid(const fs::path& dir, const std::string& stem, const ScalarGrid& grid) {
  save_grid((dir / (stem + ".grid")).string(), grid);
  save_pgm((dir / (stem + ".pgm")).string(), grid);
}

bool differential_pipeline(const RunConfig& cfg) { return cfg.pipeline == "differential"; }

void cmd_phantom(const RunConfig& cfg) {
  const double theta = cfg.theta.value_or(std::numbers::pi / 4);
  const Scene scene = [&] {
    try {
      return make_preset(cfg.preset, cfg.N, cfg.sigma_cells, theta);
    } catch (const PreconditionError& e) {
      throw UsageError(e.what());
    }
  }();
  const auto dir = out_dir(cfg);
  save_scene((dir / "scene.txt").string(), scene);
  const GridSpec grid = image_grid(scene.geom, cfg.N);
  export_grid(dir, "model_mu_t", rasterize(scene.model, Coefficient::Total, grid));
  export_grid(dir, "model_mu_s", rasterize(scene.model, Coefficient::Scattering, grid));
  export_grid(dir, "model_mu_a", rasterize(scene.model, Coefficient::Absorption, grid));
  std::cout << "wrote " << (dir / "scene.txt").string() << "\n";
}

Scene scene_for(const RunConfig& cfg) {
  Scene scene = load_scene(cfg.phantom);
  if (cfg.theta) {
    scene.geom = SlabGeometry(scene.geom.L(), *cfg.theta, scene.geom.y_min(), scene.geom.y_max());
  }
  return scene;
}

void cmd_forward(const RunConfig& cfg) {
  const Scene scene = scene_for(cfg);
  const ForwardOptions options{cfg.quad_step, ForwardMethod::Quadrature};
  const auto dir = out_dir(cfg);
  if (differential_pipeline(cfg)) {
    const PairData pair = simulate_pair(scene.model, scene.geom, cfg.N, {}, options);
    save_data((dir / "data_a.brt").string(), pair.phi_a);
    save_data((dir / "data_b.brt").string(), pair.phi_b);
    std::cout << "wrote " << (dir / "data_a.brt").string() << " " << (dir / "data_b.brt").string()
              << "\n";
    return;
  }
  const WindowSpec window = data_window(scene.geom, cfg.N, DataKind::Single);
  const DataFunction data = simulate_uniform(scene.model, scene.geom, cfg.N, window, options);
  save_data((dir / "data.brt").string(), data);
  std::cout << "wrote " << (dir / "data.brt").string() << "\n";
}

void check_header(const DataFunction& data, const Scene& scene, const RunConfig& cfg) {
  if (cfg.n_given && data.N != cfg.N) {
    throw DomainError("data file has N = " + std::to_string(data.N) + ", configured N = " +
                      std::to_string(cfg.N));
  }
  if (std::abs(data.L - scene.geom.L()) > 1e-9 * scene.geom.L()) {
    throw DomainError("data file slab thickness does not match the scene");
  }
  if (std::abs(data.theta - scene.geom.theta()) > 1e-9) {
    throw DomainError("data file angle does not match the configured theta");
  }
}

void cmd_reconstruct(const RunConfig& cfg) {
  const Scene scene = scene_for(cfg);
  const double bar_t = scene.model.bar_mu_t();
  const auto dir = out_dir(cfg);

  if (!differential_pipeline(cfg)) {
    if (cfg.data.size() != 1) throw UsageError("uniform pipelines take exactly one --data file");
    const DataFunction data = load_data(cfg.data[0]);
    check_header(data, scene, cfg);
    if (data.kind != DataKind::Single) throw DomainError("uniform pipelines need single-family data");
    if (cfg.pipeline == "uniform-realspace") {
      export_grid(dir, "mu_t", backproject_realspace(data, scene.geom, bar_t));
    } else {
      UniformOptions options;
      options.consistency_filter = cfg.consistency_filter;
      const UniformResult r = reconstruct_uniform(data, scene.geom, bar_t, options);
      export_grid(dir, "mu_t", r.mu_t);
      if (cfg.verbose) {
        std::cerr << "imag/real ratio " << r.imag_ratio << "\n";
        double worst = 0.0;
        for (const auto& a : r.gauge) worst = std::max(worst, std::abs(a));
        if (!r.gauge.empty()) std::cerr << "max |a| over modes " << worst << "\n";
      }
    }
    std::cout << "wrote " << (dir / "mu_t.grid").string() << "\n";
    return;
  }

  if (cfg.data.size() != 2) throw UsageError("the differential pipeline takes two --data files");
  const DataFunction phi_a = load_data(cfg.data[0]);
  const DataFunction phi_b = load_data(cfg.data[1]);
  check_header(phi_a, scene, cfg);
  check_header(phi_b, scene, cfg);
  const DataFunction psi_d = differential(phi_a, phi_b);
  const ScalarGrid mu_t = [&] {
    if (cfg.diff_method != "realspace") return invert_diff_fourier(transform_w(psi_d), scene.geom, bar_t).grid;
    const DiffResult r = invert_diff_realspace(psi_d, scene.geom, bar_t);
    if (r.leaky) std::cerr << "warning: differential data reaches the window edge\n";
    return r.mu_t;
  }();
  const ScatteringResult s = recover_scattering(mu_t, phi_a, RayFamily::A, scene.geom,
                                                scene.model.bar_mu_s, bar_t, cfg.quad_step);
  if (cfg.verbose && s.clamped > 0) std::cerr << s.clamped << " nodes clamped\n";
  export_grid(dir, "mu_t", mu_t);
  export_grid(dir, "mu_s", s.mu_s);
  export_grid(dir, "mu_a", absorption(mu_t, s.mu_s));
  std::cout << "wrote " << (dir / "mu_t.grid").string() << " " << (dir / "mu_s.grid").string()
            << " " << (dir / "mu_a.grid").string() << "\n";
}

void cmd_compare(const RunConfig& cfg) {
  const ScalarGrid model = load_grid(cfg.model);
  const ScalarGrid recon = load_grid(cfg.recon);
  const Discrepancy d = compare(model, recon, CompareOptions{cfg.threshold, cfg.background});
  std::cout << summary_line(d) << "\n";

  std::size_t best = 0;
  double peak = -1.0;
  for (std::size_t k = 0; k < model.values().size(); ++k) {
    const double v = std::abs(model.values()[k] - cfg.background);
    if (v > peak) {
      peak = v;
      best = k;
    }
  }
  const GridSpec g = model.spec();
  const double y = g.y(best % g.ny);
  const double z = g.z(best / g.ny);
  const auto dir = out_dir(cfg);
  save_profile_csv((dir / "model_y.csv").string(), cross_section(model, Axis::Y, y, z), "y");
  save_profile_csv((dir / "recon_y.csv").string(), cross_section(recon, Axis::Y, y, z), "y");
  save_profile_csv((dir / "model_z.csv").string(), cross_section(model, Axis::Z, y, z), "z");
  save_profile_csv((dir / "recon_z.csv").string(), cross_section(recon, Axis::Z, y, z), "z");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Broken-ray transform toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--N", cfg.N, "samples in Δ")->check(CLI::Range(4, 100000));
    sub->add_option("--theta", cfg.theta, "scattering angle in radians");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_flag("-v,--verbose", cfg.verbose, "diagnostics on stderr");
  };
  const std::vector<std::string> pipelines{"uniform-fourier", "uniform-realspace", "differential"};

  auto* phantom = app.add_subcommand("phantom", "write a preset scene and its model grids");
  add_common(phantom);
  phantom->add_option("--preset", cfg.preset, "square|fig2|gaussian|fig3|fig5|fig7|constant")
      ->required();
  phantom->add_option("--sigma-cells", cfg.sigma_cells, "Gaussian width in grid steps")
      ->check(CLI::PositiveNumber);

  auto* forward = app.add_subcommand("forward", "simulate data for a scene");
  add_common(forward);
  forward->add_option("--phantom", cfg.phantom, "scene file")->required()->check(CLI::ExistingFile);
  forward->add_option("--pipeline", cfg.pipeline)->check(CLI::IsMember(pipelines));
  forward->add_option("--quad-step", cfg.quad_step, "largest Simpson panel, 0 for h/4")
      ->check(CLI::NonNegativeNumber);

  auto* reconstruct = app.add_subcommand("reconstruct", "invert data files");
  add_common(reconstruct);
  reconstruct->add_option("--phantom", cfg.phantom, "scene file with window and backgrounds")
      ->required()
      ->check(CLI::ExistingFile);
  reconstruct->add_option("--data", cfg.data, "data file(s); family A first")
      ->required()
      ->check(CLI::ExistingFile);
  reconstruct->add_option("--pipeline", cfg.pipeline)->check(CLI::IsMember(pipelines));
  reconstruct->add_option("--diff-method", cfg.diff_method)
      ->check(CLI::IsMember({"fourier", "realspace"}));
  reconstruct->add_option("--quad-step", cfg.quad_step)->check(CLI::NonNegativeNumber);
  reconstruct->add_flag("--consistency-filter", cfg.consistency_filter,
                        "project out the gauge component per mode");

  auto* cmp = app.add_subcommand("compare", "discrepancy between a model and a reconstruction");
  cmp->add_option("--model", cfg.model)->required()->check(CLI::ExistingFile);
  cmp->add_option("--recon", cfg.recon)->required()->check(CLI::ExistingFile);
  cmp->add_option("--background", cfg.background);
  cmp->add_option("--threshold", cfg.threshold)->check(CLI::PositiveNumber);
  cmp->add_option("--out", cfg.out, "directory for CSV profiles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (auto* sub : {phantom, forward, reconstruct}) {
    if (sub->parsed() && sub->count("--N") > 0) cfg.n_given = true;
  }

  try {
    if (phantom->parsed()) cmd_phantom(cfg);
    if (forward->parsed()) cmd_forward(cfg);
    if (reconstruct->parsed()) cmd_reconstruct(cfg);
    if (cmp->parsed()) cmd_compare(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
