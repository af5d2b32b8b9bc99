#include "veo/commands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "veo/constants.hpp"
#include "veo/csv.hpp"
#include "veo/errors.hpp"
#include "veo/log.hpp"
#include "veo/svg.hpp"

namespace veo {

namespace {

namespace fs = std::filesystem;

fs::path ensure_out_dir(const std::string& out_dir) {
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw config_error("cannot create output directory '" + out_dir +
                       "': " + ec.message());
  return dir;
}

std::string state_label(const ThermalState& state) {
  switch (state.kind) {
    case ThermalState::Kind::vacuum:
      return "vacuum";
    case ThermalState::Kind::blackbody: {
      std::string t = format_double(state.temperature_k);
      for (char& c : t)
        if (c == '.') c = 'p';
      return "blackbody_" + t + "k";
    }
    case ThermalState::Kind::custom:
      return "custom";
  }
  return "state";
}

std::vector<double> scaled(const std::vector<double>& v, double factor) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * factor;
  return out;
}

const char* k_palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b"};

struct SceneModels {
  FrequencyGrid grid;
  DispersionModel model;
  CrystalParams params;
  Responsivity resp;
  std::vector<double> taus;
};

SceneModels build_scene(const ExperimentConfig& cfg) {
  SceneModels scene;
  scene.grid = grid_from(cfg);
  scene.model = dispersion_from(cfg);
  scene.params = crystal_from(cfg);
  scene.resp = responsivity(scene.model, scene.params, scene.grid,
                            responsivity_options_from(cfg));
  scene.taus = taus_from(cfg);
  return scene;
}

Spectrum scene_spectrum(const ExperimentConfig& cfg) {
  const SceneModels scene = build_scene(cfg);
  const CorrelationTrace trace =
      g1_temporal(scene.grid, cfg.state, scene.resp, scene.taus, cfg.k_cal);
  return power_spectrum(trace);
}

}  // namespace

int run_optics(const ExperimentConfig& cfg, const std::string& out_dir) {
  const auto dir = ensure_out_dir(out_dir);
  const SceneModels scene = build_scene(cfg);

  OpticsTable table;
  for (std::size_t i = 0; i < scene.grid.size(); ++i) {
    const double omega = scene.grid.omega[i];
    const std::complex<double> n = thz_refractive_index(scene.model, omega);
    table.omega_hz.push_back(omega / (2.0 * k_pi));
    table.n_real.push_back(n.real());
    table.n_imag.push_back(n.imag());
    table.alpha_per_m.push_back(absorption_coefficient(scene.model, omega));
    table.t_field.push_back(field_transmission(scene.model, scene.params,
                                               omega));
    table.l_coh_m.push_back(coherence_length(scene.model, scene.params,
                                             omega));
    table.r_abs.push_back(std::abs(scene.resp.value[i]));
    table.r_arg.push_back(std::arg(scene.resp.value[i]));
  }
  write_optics_csv((dir / "optics.csv").string(), table);

  const std::vector<double> freq_thz = scaled(table.omega_hz, 1e-12);
  SvgPanel index_panel{"Refractive index", "frequency (THz)", "n", {}, false,
                       false};
  index_panel.series.push_back({"Re n", freq_thz, table.n_real, k_palette[0]});
  index_panel.series.push_back({"Im n", freq_thz, table.n_imag, k_palette[1]});
  SvgPanel response_panel{"Transmission and detector response",
                          "frequency (THz)", "amplitude", {}, false, false};
  response_panel.series.push_back(
      {"t_field", freq_thz, table.t_field, k_palette[0]});
  response_panel.series.push_back(
      {"|R|", freq_thz, table.r_abs, k_palette[1]});
  SvgPanel coherence_panel{"Phase-matching coherence length",
                           "frequency (THz)", "l_coh (m)", {}, false, true};
  coherence_panel.series.push_back(
      {"l_coh", freq_thz, table.l_coh_m, k_palette[0]});
  write_svg((dir / "optics.svg").string(),
            {index_panel, response_panel, coherence_panel});

  log_info("optics: " + std::to_string(scene.grid.size()) +
           " grid points -> " + (dir / "optics.csv").string());
  return 0;
}

int run_g1(const ExperimentConfig& cfg, const std::string& out_dir) {
  const auto dir = ensure_out_dir(out_dir);
  const SceneModels scene = build_scene(cfg);
  const CorrelationTrace trace =
      g1_temporal(scene.grid, cfg.state, scene.resp, scene.taus, cfg.k_cal);
  const CorrelationTrace filtered =
      lowpass_filter(trace, 2.0 * k_pi * cfg.lowpass_cutoff_hz);
  const Spectrum spec = power_spectrum(trace);

  write_trace_csv((dir / "g1_trace.csv").string(), trace);
  write_trace_csv((dir / "g1_filtered.csv").string(), filtered);
  write_spectrum_csv((dir / "g1_spectrum.csv").string(), spec);

  const std::vector<double> tau_ps = scaled(trace.tau, 1e12);
  SvgPanel trace_panel{"Electro-optic field correlation (" +
                           state_label(cfg.state) + ")",
                       "tau (ps)", "G1 (V^2/m^2)", {}, false, false};
  trace_panel.series.push_back({"raw", tau_ps, trace.value, k_palette[0]});
  trace_panel.series.push_back(
      {"low-pass", tau_ps, filtered.value, k_palette[1]});
  SvgPanel spec_panel{"Power spectrum", "frequency (THz)", "psd", {}, false,
                      false};
  spec_panel.series.push_back({"psd",
                               scaled(spec.omega, 1e-12 / (2.0 * k_pi)),
                               spec.psd, k_palette[0]});
  write_svg((dir / "g1.svg").string(), {trace_panel, spec_panel});

  log_info("g1: peak-peak " + format_double(peak_peak(trace)) +
           " V^2/m^2 -> " + (dir / "g1_trace.csv").string());
  return 0;
}

int run_spatial(const ExperimentConfig& cfg, const std::string& out_dir) {
  if (cfg.delta_x_list_m.empty())
    throw config_error(
        "[spatial] delta_x_list_m: required for the spatial command");
  const auto dir = ensure_out_dir(out_dir);
  const SceneModels scene = build_scene(cfg);
  std::vector<ThermalState> states = cfg.spatial_states;
  if (states.empty()) states.push_back(cfg.state);

  SvgPanel panel{"Spatial coherence of the correlation peak",
                 "delta_x (um)", "peak-peak G1 (V^2/m^2)", {}, false, false};
  for (std::size_t s = 0; s < states.size(); ++s) {
    SpatialTable table;
    for (double delta_x : cfg.delta_x_list_m) {
      const CorrelationTrace trace =
          g1_spatial(scene.grid, states[s], scene.resp, scene.params, delta_x,
                     scene.taus, cfg.k_cal);
      table.delta_x_m.push_back(delta_x);
      table.g1_pp.push_back(peak_peak(trace));
    }
    const std::string label = state_label(states[s]);
    write_spatial_csv((dir / ("spatial_" + label + ".csv")).string(), table);
    panel.series.push_back({label, scaled(table.delta_x_m, 1e6), table.g1_pp,
                            k_palette[s % 6]});
  }
  write_svg((dir / "spatial.svg").string(), {panel});

  log_info("spatial: " + std::to_string(states.size()) + " state(s) x " +
           std::to_string(cfg.delta_x_list_m.size()) + " offsets -> " +
           (dir / "spatial.svg").string());
  return 0;
}

int run_photons(const ExperimentConfig& hot, const ExperimentConfig& cold,
                const std::string& out_dir) {
  const auto dir = ensure_out_dir(out_dir);
  const Spectrum spec_hot = scene_spectrum(hot);
  const Spectrum spec_cold = scene_spectrum(cold);
  const PhotonExtraction ext =
      extract_photon_number(spec_hot, spec_cold, hot.extraction_floor_rel);
  write_photons_csv((dir / "photons.csv").string(), ext);

  std::vector<double> freq_thz, extracted, reference;
  for (std::size_t i = 0; i < ext.omega.size(); ++i) {
    if (!ext.valid[i]) continue;
    freq_thz.push_back(ext.omega[i] / (2.0 * k_pi) * 1e-12);
    extracted.push_back(ext.n_mean[i]);
    if (hot.state.kind == ThermalState::Kind::blackbody)
      reference.push_back(
          bose_einstein(ext.omega[i], hot.state.temperature_k));
  }
  SvgPanel panel{"Extracted mean photon number (" + state_label(hot.state) +
                     " vs " + state_label(cold.state) + ")",
                 "frequency (THz)", "n_mean", {}, false, true};
  panel.series.push_back({"extracted", freq_thz, extracted, k_palette[0]});
  if (!reference.empty())
    panel.series.push_back(
        {"Bose-Einstein", freq_thz, reference, k_palette[1]});
  write_svg((dir / "photons.svg").string(), {panel});

  std::size_t n_valid = 0;
  for (auto v : ext.valid) n_valid += v;
  log_info("photons: " + std::to_string(n_valid) + "/" +
           std::to_string(ext.valid.size()) + " valid bins -> " +
           (dir / "photons.csv").string());
  return 0;
}

int run_noise(const ExperimentConfig& cfg, const std::string& out_dir) {
  const auto dir = ensure_out_dir(out_dir);
  const SceneModels scene = build_scene(cfg);
  const CorrelationTrace trace =
      g1_temporal(scene.grid, cfg.state, scene.resp, scene.taus, cfg.k_cal);
  const double true_corr = trace.value[trace.tau.size() / 2];  // tau = 0

  const PulseTrainRecord record = synthesize_pulse_train(
      true_corr, noise_from(cfg), cfg.n_pulses, cfg.f_rep_hz);
  const CorrelationEstimate est = estimate_correlation(record);
  const std::vector<double> products = pair_products(record);
  const double f_pair = cfg.f_rep_hz / 2.0;

  std::vector<double> gates;
  for (std::size_t m = 2; m <= products.size() / 2; m *= 2)
    gates.push_back(double(m) / f_pair);
  if (gates.size() < 2)
    throw config_error(
        "[noise] n_pulses: too few pulses for an Allan curve (need >= 16)");
  const AllanCurve allan = allan_deviation(products, f_pair, gates);
  const double slope = allan_log_slope(allan);

  // Per-pair product deviation: the product of two independent N(0, sigma)
  // channels has standard deviation sigma^2.
  const double pair_sigma = cfg.shot_sigma * cfg.shot_sigma;
  const double t_int =
      integration_time_for_sigma(pair_sigma, cfg.target_sigma, cfg.f_rep_hz);

  write_allan_csv((dir / "allan.csv").string(), allan);

  std::ofstream report((dir / "noise_report.txt").string(), std::ios::binary);
  if (!report)
    throw config_error("cannot open '" + (dir / "noise_report.txt").string() +
                       "' for writing");
  report << "n_pulses = " << record.n_pulses() << "\n"
         << "f_rep_hz = " << format_double(cfg.f_rep_hz) << "\n"
         << "seed = " << cfg.seed << "\n"
         << "true_corr = " << format_double(true_corr) << "\n"
         << "estimate = " << format_double(est.mean) << "\n"
         << "stderr = " << format_double(est.stderr_) << "\n"
         << "n_pairs = " << est.n_pairs << "\n"
         << "allan_slope = " << format_double(slope) << "\n"
         << "pair_sigma = " << format_double(pair_sigma) << "\n"
         << "target_sigma = " << format_double(cfg.target_sigma) << "\n"
         << "integration_time_s = " << format_double(t_int) << "\n";
  report.close();

  SvgPanel allan_panel{"Allan deviation of pair products", "gate time (s)",
                       "adev", {}, true, true};
  allan_panel.series.push_back(
      {"measured", allan.gate_times, allan.deviations, k_palette[0]});
  std::vector<double> white;
  for (double gate : allan.gate_times)
    white.push_back(pair_sigma / std::sqrt(gate * f_pair));
  allan_panel.series.push_back(
      {"white reference", allan.gate_times, white, k_palette[1]});

  SvgPanel mean_panel{"Running mean of pair products", "pair count",
                      "mean (V^2/m^2)", {}, true, false};
  std::vector<double> counts, running;
  double sum = 0.0;
  const std::size_t stride = std::max<std::size_t>(1, products.size() / 1024);
  for (std::size_t i = 0; i < products.size(); ++i) {
    sum += products[i];
    if ((i + 1) % stride == 0 || i + 1 == products.size()) {
      counts.push_back(double(i + 1));
      running.push_back(sum / double(i + 1));
    }
  }
  mean_panel.series.push_back({"running mean", counts, running, k_palette[0]});
  std::vector<double> true_line(counts.size(), true_corr);
  mean_panel.series.push_back({"true", counts, true_line, k_palette[1]});
  write_svg((dir / "noise.svg").string(), {allan_panel, mean_panel});

  log_info("noise: estimate " + format_double(est.mean) + " +/- " +
           format_double(est.stderr_) + " from " +
           std::to_string(est.n_pairs) + " pairs -> " +
           (dir / "noise_report.txt").string());
  return 0;
}

}  // namespace veo
