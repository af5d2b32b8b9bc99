#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "veo/commands.hpp"
#include "veo/config.hpp"
#include "veo/errors.hpp"
#include "veo/log.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  bool out_dir_set = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file")
      ->required();
  cmd->add_option("--out", args.out_dir, "output directory (overrides config)")
      ->each([&args](const std::string&) { args.out_dir_set = true; });
  cmd->add_option("--seed", args.seed, "noise seed (overrides config)")
      ->each([&args](const std::string&) { args.seed_set = true; });
}

veo::ExperimentConfig load(const CommonArgs& args) {
  veo::ExperimentConfig cfg = veo::load_config(args.config_path);
  if (args.seed_set) cfg.seed = args.seed;
  if (args.out_dir_set) cfg.out_dir = args.out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Electro-optic vacuum/thermal field correlation toolkit"};
  app.require_subcommand(1);

  CommonArgs optics_args, g1_args, spatial_args, photons_args, noise_args;
  std::string cold_path;

  CLI::App* optics =
      app.add_subcommand("optics", "crystal index, transmission, responsivity");
  add_common(optics, optics_args);
  CLI::App* g1 =
      app.add_subcommand("g1", "temporal field-correlation trace and spectrum");
  add_common(g1, g1_args);
  CLI::App* spatial =
      app.add_subcommand("spatial", "correlation peak vs transverse offset");
  add_common(spatial, spatial_args);
  CLI::App* photons =
      app.add_subcommand("photons", "photon-number extraction hot vs cold");
  add_common(photons, photons_args);
  photons->add_option("--cold", cold_path,
                      "cold reference config (default: same config with a "
                      "vacuum state)");
  CLI::App* noise =
      app.add_subcommand("noise", "pulse-train synthesis, Allan analysis");
  add_common(noise, noise_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (optics->parsed()) {
      const auto cfg = load(optics_args);
      return veo::run_optics(cfg, cfg.out_dir);
    }
    if (g1->parsed()) {
      const auto cfg = load(g1_args);
      return veo::run_g1(cfg, cfg.out_dir);
    }
    if (spatial->parsed()) {
      const auto cfg = load(spatial_args);
      return veo::run_spatial(cfg, cfg.out_dir);
    }
    if (photons->parsed()) {
      const auto hot = load(photons_args);
      veo::ExperimentConfig cold;
      if (cold_path.empty()) {
        cold = hot;
        cold.state = veo::ThermalState{};  // vacuum reference
      } else {
        cold = veo::load_config(cold_path);
        if (hot.seed != cold.seed && photons_args.seed_set)
          cold.seed = hot.seed;
      }
      return veo::run_photons(hot, cold, hot.out_dir);
    }
    if (noise->parsed()) {
      const auto cfg = load(noise_args);
      return veo::run_noise(cfg, cfg.out_dir);
    }
  } catch (const veo::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const veo::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;  // no subcommand matched (unreachable with require_subcommand)
}
