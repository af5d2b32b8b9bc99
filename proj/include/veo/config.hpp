#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "veo/acquisition.hpp"
#include "veo/correlation.hpp"
#include "veo/crystal.hpp"

namespace veo {

inline bool operator==(const ThermalState& a, const ThermalState& b) {
  return a.kind == b.kind && a.temperature_k == b.temperature_k &&
         a.custom_nbar == b.custom_nbar;
}

// Named dispersion block ([material <name>] section). Frequencies in Hz.
struct MaterialParams {
  double eps_inf = 7.44;
  double oscillator_strength = 2.7;
  double phonon_freq_hz = 5.32e12;
  double gamma_10k_hz = 0.03e12;
  double gamma_300k_hz = 0.05e12;

  bool operator==(const MaterialParams&) const = default;
};

// One experiment: crystal + dispersion reference, radiation state, grids,
// noise model, calibration, output location. Parses from / serializes to the
// flat INI-like config format losslessly.
struct ExperimentConfig {
  // [crystal]
  std::string material = "znte-default";
  double length_m = 3e-3;
  double temperature_k = 4.0;  // crystal lattice temperature
  double r41_m_per_v = 4e-12;
  double n_nir = 2.85;
  double ng_nir = 3.25;
  double probe_freq_hz = 375e12;
  double probe_fwhm_s = 80e-15;
  double probe_waist_m = 125e-6;
  double probe_intensity_w_m2 = 1e13;
  double epsilon_r = 10.0;
  double transverse_width_m = 2.8e-4;

  // [material <name>] blocks
  std::map<std::string, MaterialParams> materials = {{"znte-default", {}}};

  // [grid]
  double omega_min_hz = 0.05e12;
  double omega_max_hz = 4.5e12;

  // [tau]
  double tau_half_span_s = 5e-12;
  double tau_step_s = 10e-15;

  // [state]
  ThermalState state;

  // [calibration]
  double k_cal = 0.45337719181361968;
  bool include_envelope = true;
  bool include_exit_facet = false;
  double lowpass_cutoff_hz = 3e12;
  double extraction_floor_rel = 1e-9;

  // [spatial]
  std::vector<double> delta_x_list_m;
  std::vector<ThermalState> spatial_states;

  // [noise]
  std::uint64_t seed = 1;
  double shot_sigma = 107.0;
  double drift_amplitude = 0.0;
  double drift_knee_hz = 1e3;
  double f_rep_hz = 8e7;
  std::uint64_t n_pulses = 400000;
  double target_sigma = 0.018;

  // [output]
  std::string out_dir = "out";

  bool operator==(const ExperimentConfig&) const = default;
};

// Parse / validate; every diagnostic names the offending section and key.
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& source_name);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

// Model builders (resolve the material reference, convert Hz to rad/s).
DispersionModel dispersion_from(const ExperimentConfig& cfg);
CrystalParams crystal_from(const ExperimentConfig& cfg);
ResponsivityOptions responsivity_options_from(const ExperimentConfig& cfg);
NoiseModel noise_from(const ExperimentConfig& cfg);
std::size_t tau_n_half_from(const ExperimentConfig& cfg);
std::vector<double> taus_from(const ExperimentConfig& cfg);
FrequencyGrid grid_from(const ExperimentConfig& cfg);

}  // namespace veo
