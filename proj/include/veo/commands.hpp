#pragma once

#include <string>

#include "veo/config.hpp"

namespace veo {

// Subcommand drivers. Each writes its artifacts into out_dir (created on
// demand) and returns 0; config problems throw config_error (exit 2) and
// numerical failures numeric_error (exit 3). Outputs are deterministic
// functions of the config, byte-identical across reruns.

// optics.csv + optics.svg: index, transmission, coherence length, |R|.
int run_optics(const ExperimentConfig& cfg, const std::string& out_dir);

// g1_trace.csv, g1_filtered.csv, g1_spectrum.csv, g1.svg.
int run_g1(const ExperimentConfig& cfg, const std::string& out_dir);

// spatial_<state>.csv per configured state + spatial.svg.
int run_spatial(const ExperimentConfig& cfg, const std::string& out_dir);

// photons.csv + photons.svg from a hot and a cold (vacuum-reference) run.
int run_photons(const ExperimentConfig& hot, const ExperimentConfig& cold,
                const std::string& out_dir);

// allan.csv, noise_report.txt, noise.svg.
int run_noise(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace veo
