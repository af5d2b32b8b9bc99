#include "veo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "veo/constants.hpp"
#include "veo/csv.hpp"
#include "veo/errors.hpp"

namespace veo {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& source, const std::string& section,
                       const std::string& key, const std::string& why) {
  throw config_error(source + ": [" + section + "] " + key + ": " + why);
}

double to_double(const std::string& source, const std::string& section,
                 const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    fail(source, section, key, "not a number: '" + value + "'");
  return out;
}

std::uint64_t to_u64(const std::string& source, const std::string& section,
                     const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    fail(source, section, key, "not an unsigned integer: '" + value + "'");
  return out;
}

bool to_bool(const std::string& source, const std::string& section,
             const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  fail(source, section, key, "expected 'true' or 'false', got '" + value + "'");
}

std::vector<double> to_double_list(const std::string& source,
                                   const std::string& section,
                                   const std::string& key,
                                   const std::string& value) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    std::size_t comma = value.find(',', pos);
    if (comma == std::string::npos) comma = value.size();
    const std::string item = trim(value.substr(pos, comma - pos));
    if (item.empty()) fail(source, section, key, "empty list element");
    out.push_back(to_double(source, section, key, item));
    pos = comma + 1;
  }
  return out;
}

ThermalState parse_state_spec(const std::string& source,
                              const std::string& section,
                              const std::string& key,
                              const std::string& value) {
  ThermalState state;
  if (value == "vacuum") return state;
  const auto colon = value.find(':');
  if (value.substr(0, colon) == "blackbody" && colon != std::string::npos) {
    state.kind = ThermalState::Kind::blackbody;
    state.temperature_k =
        to_double(source, section, key, trim(value.substr(colon + 1)));
    if (state.temperature_k < 0.0)
      fail(source, section, key, "negative temperature");
    return state;
  }
  fail(source, section, key,
       "expected 'vacuum' or 'blackbody:<kelvin>', got '" + value + "'");
}

std::string state_spec_string(const ThermalState& state) {
  switch (state.kind) {
    case ThermalState::Kind::vacuum:
      return "vacuum";
    case ThermalState::Kind::blackbody:
      return "blackbody:" + format_double(state.temperature_k);
    case ThermalState::Kind::custom:
      break;
  }
  throw config_error("custom states have no compact string form");
}

void require(bool ok, const std::string& source, const std::string& section,
             const std::string& key, const std::string& why) {
  if (!ok) fail(source, section, key, why);
}

void validate(const ExperimentConfig& cfg, const std::string& source) {
  require(cfg.materials.count(cfg.material) == 1, source, "crystal",
          "material", "references unknown material '" + cfg.material + "'");
  require(cfg.length_m > 0.0, source, "crystal", "length_m", "must be > 0");
  require(cfg.temperature_k >= 0.0, source, "crystal", "temperature_k",
          "must be >= 0");
  require(cfg.probe_fwhm_s > 0.0, source, "crystal", "probe_fwhm_s",
          "must be > 0");
  require(cfg.probe_waist_m > 0.0, source, "crystal", "probe_waist_m",
          "must be > 0");
  require(cfg.n_nir >= 1.0, source, "crystal", "n_nir", "index must be >= 1");
  require(cfg.ng_nir >= 1.0, source, "crystal", "ng_nir",
          "index must be >= 1");
  require(cfg.epsilon_r >= 1.0, source, "crystal", "epsilon_r",
          "must be >= 1");
  require(cfg.transverse_width_m > 0.0, source, "crystal",
          "transverse_width_m", "must be > 0");
  for (const auto& [name, mat] : cfg.materials) {
    require(mat.eps_inf >= 1.0, source, "material " + name, "eps_inf",
            "must be >= 1");
    require(mat.oscillator_strength >= 0.0, source, "material " + name,
            "oscillator_strength", "must be >= 0");
    require(mat.phonon_freq_hz > 0.0, source, "material " + name,
            "phonon_freq_hz", "must be > 0");
    require(mat.gamma_10k_hz >= 0.0 && mat.gamma_300k_hz >= 0.0, source,
            "material " + name, "gamma_10k_hz", "damping must be >= 0");
  }
  require(cfg.omega_min_hz > 0.0, source, "grid", "omega_min_hz",
          "must be > 0");
  require(cfg.omega_max_hz > cfg.omega_min_hz, source, "grid", "omega_max_hz",
          "must exceed omega_min_hz");
  require(cfg.tau_step_s > 0.0, source, "tau", "step_s", "must be > 0");
  require(cfg.tau_half_span_s >= cfg.tau_step_s, source, "tau", "half_span_s",
          "must cover at least one step");
  // Nyquist margin of the aligned grid.
  require(cfg.omega_max_hz * 2.0 * cfg.tau_step_s <= 1.0, source, "tau",
          "step_s", "too coarse for omega_max_hz (Nyquist)");
  if (cfg.state.kind == ThermalState::Kind::blackbody)
    require(cfg.state.temperature_k >= 0.0, source, "state", "temperature_k",
            "must be >= 0");
  if (cfg.state.kind == ThermalState::Kind::custom) {
    require(!cfg.state.custom_nbar.empty(), source, "state", "custom_nbar",
            "required for kind = custom");
    for (double v : cfg.state.custom_nbar)
      require(v >= 0.0, source, "state", "custom_nbar",
              "occupations must be >= 0");
  }
  require(cfg.k_cal > 0.0, source, "calibration", "k_cal", "must be > 0");
  require(cfg.lowpass_cutoff_hz > 0.0, source, "calibration",
          "lowpass_cutoff_hz", "must be > 0");
  require(cfg.extraction_floor_rel >= 0.0, source, "calibration",
          "extraction_floor_rel", "must be >= 0");
  for (std::size_t i = 0; i < cfg.delta_x_list_m.size(); ++i) {
    require(cfg.delta_x_list_m[i] >= 0.0, source, "spatial", "delta_x_list_m",
            "offsets must be >= 0");
    if (i > 0)
      require(cfg.delta_x_list_m[i] > cfg.delta_x_list_m[i - 1], source,
              "spatial", "delta_x_list_m", "offsets must increase");
  }
  require(cfg.shot_sigma >= 0.0, source, "noise", "shot_sigma",
          "must be >= 0");
  require(cfg.drift_amplitude >= 0.0, source, "noise", "drift_amplitude",
          "must be >= 0");
  require(cfg.drift_knee_hz >= 0.0, source, "noise", "drift_knee_hz",
          "must be >= 0");
  require(cfg.f_rep_hz > 0.0, source, "noise", "f_rep_hz", "must be > 0");
  require(cfg.n_pulses >= 2 && cfg.n_pulses % 2 == 0, source, "noise",
          "n_pulses", "must be even and >= 2");
  require(cfg.target_sigma > 0.0, source, "noise", "target_sigma",
          "must be > 0");
  require(!cfg.out_dir.empty(), source, "output", "dir", "must not be empty");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& source_name) {
  ExperimentConfig cfg;
  cfg.materials.clear();  // configs list their materials explicitly
  bool saw_default_material = false;

  std::istringstream in(text);
  std::string line, section;
  std::string material_name;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error(source_name + ":" + std::to_string(line_no) +
                           ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.rfind("material ", 0) == 0) {
        material_name = trim(section.substr(9));
        if (material_name.empty())
          throw config_error(source_name + ": material section needs a name");
        cfg.materials.emplace(material_name, MaterialParams{});
        if (material_name == "znte-default") saw_default_material = true;
      } else {
        material_name.clear();
        if (section != "crystal" && section != "grid" && section != "tau" &&
            section != "state" && section != "calibration" &&
            section != "spatial" && section != "noise" && section != "output")
          throw config_error(source_name + ": unknown section [" + section +
                             "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(source_name + ":" + std::to_string(line_no) +
                         ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw config_error(source_name + ": key '" + key +
                         "' outside any section");

    auto num = [&] { return to_double(source_name, section, key, value); };
    auto u64 = [&] { return to_u64(source_name, section, key, value); };
    auto flag = [&] { return to_bool(source_name, section, key, value); };
    auto list = [&] {
      return to_double_list(source_name, section, key, value);
    };

    if (!material_name.empty()) {
      MaterialParams& mat = cfg.materials[material_name];
      if (key == "eps_inf") mat.eps_inf = num();
      else if (key == "oscillator_strength") mat.oscillator_strength = num();
      else if (key == "phonon_freq_hz") mat.phonon_freq_hz = num();
      else if (key == "gamma_10k_hz") mat.gamma_10k_hz = num();
      else if (key == "gamma_300k_hz") mat.gamma_300k_hz = num();
      else fail(source_name, section, key, "unknown key");
    } else if (section == "crystal") {
      if (key == "material") cfg.material = value;
      else if (key == "length_m") cfg.length_m = num();
      else if (key == "temperature_k") cfg.temperature_k = num();
      else if (key == "r41_m_per_v") cfg.r41_m_per_v = num();
      else if (key == "n_nir") cfg.n_nir = num();
      else if (key == "ng_nir") cfg.ng_nir = num();
      else if (key == "probe_freq_hz") cfg.probe_freq_hz = num();
      else if (key == "probe_fwhm_s") cfg.probe_fwhm_s = num();
      else if (key == "probe_waist_m") cfg.probe_waist_m = num();
      else if (key == "probe_intensity_w_m2") cfg.probe_intensity_w_m2 = num();
      else if (key == "epsilon_r") cfg.epsilon_r = num();
      else if (key == "transverse_width_m") cfg.transverse_width_m = num();
      else fail(source_name, section, key, "unknown key");
    } else if (section == "grid") {
      if (key == "omega_min_hz") cfg.omega_min_hz = num();
      else if (key == "omega_max_hz") cfg.omega_max_hz = num();
      else fail(source_name, section, key, "unknown key");
    } else if (section == "tau") {
      if (key == "half_span_s") cfg.tau_half_span_s = num();
      else if (key == "step_s") cfg.tau_step_s = num();
      else fail(source_name, section, key, "unknown key");
    } else if (section == "state") {
      if (key == "kind") {
        if (value == "vacuum") cfg.state.kind = ThermalState::Kind::vacuum;
        else if (value == "blackbody")
          cfg.state.kind = ThermalState::Kind::blackbody;
        else if (value == "custom")
          cfg.state.kind = ThermalState::Kind::custom;
        else
          fail(source_name, section, key,
               "expected vacuum|blackbody|custom, got '" + value + "'");
      } else if (key == "temperature_k") {
        cfg.state.temperature_k = num();
      } else if (key == "custom_nbar") {
        cfg.state.custom_nbar = list();
      } else {
        fail(source_name, section, key, "unknown key");
      }
    } else if (section == "calibration") {
      if (key == "k_cal") cfg.k_cal = num();
      else if (key == "include_envelope") cfg.include_envelope = flag();
      else if (key == "include_exit_facet") cfg.include_exit_facet = flag();
      else if (key == "lowpass_cutoff_hz") cfg.lowpass_cutoff_hz = num();
      else if (key == "extraction_floor_rel") cfg.extraction_floor_rel = num();
      else fail(source_name, section, key, "unknown key");
    } else if (section == "spatial") {
      if (key == "delta_x_list_m") {
        cfg.delta_x_list_m = list();
      } else if (key == "states") {
        cfg.spatial_states.clear();
        std::size_t pos = 0;
        while (pos <= value.size()) {
          std::size_t comma = value.find(',', pos);
          if (comma == std::string::npos) comma = value.size();
          const std::string item = trim(value.substr(pos, comma - pos));
          if (item.empty()) fail(source_name, section, key, "empty state");
          cfg.spatial_states.push_back(
              parse_state_spec(source_name, section, key, item));
          pos = comma + 1;
        }
      } else {
        fail(source_name, section, key, "unknown key");
      }
    } else if (section == "noise") {
      if (key == "seed") cfg.seed = u64();
      else if (key == "shot_sigma") cfg.shot_sigma = num();
      else if (key == "drift_amplitude") cfg.drift_amplitude = num();
      else if (key == "drift_knee_hz") cfg.drift_knee_hz = num();
      else if (key == "f_rep_hz") cfg.f_rep_hz = num();
      else if (key == "n_pulses") cfg.n_pulses = u64();
      else if (key == "target_sigma") cfg.target_sigma = num();
      else fail(source_name, section, key, "unknown key");
    } else if (section == "output") {
      if (key == "dir") cfg.out_dir = value;
      else fail(source_name, section, key, "unknown key");
    }
  }
  if (cfg.materials.empty()) {
    cfg.materials.emplace("znte-default", MaterialParams{});
    (void)saw_default_material;
  }
  validate(cfg, source_name);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  auto kv = [&out](const std::string& key, const std::string& value) {
    out << key << " = " << value << "\n";
  };
  auto kvd = [&](const std::string& key, double v) { kv(key, format_double(v)); };

  out << "[crystal]\n";
  kv("material", cfg.material);
  kvd("length_m", cfg.length_m);
  kvd("temperature_k", cfg.temperature_k);
  kvd("r41_m_per_v", cfg.r41_m_per_v);
  kvd("n_nir", cfg.n_nir);
  kvd("ng_nir", cfg.ng_nir);
  kvd("probe_freq_hz", cfg.probe_freq_hz);
  kvd("probe_fwhm_s", cfg.probe_fwhm_s);
  kvd("probe_waist_m", cfg.probe_waist_m);
  kvd("probe_intensity_w_m2", cfg.probe_intensity_w_m2);
  kvd("epsilon_r", cfg.epsilon_r);
  kvd("transverse_width_m", cfg.transverse_width_m);

  for (const auto& [name, mat] : cfg.materials) {
    out << "\n[material " << name << "]\n";
    kvd("eps_inf", mat.eps_inf);
    kvd("oscillator_strength", mat.oscillator_strength);
    kvd("phonon_freq_hz", mat.phonon_freq_hz);
    kvd("gamma_10k_hz", mat.gamma_10k_hz);
    kvd("gamma_300k_hz", mat.gamma_300k_hz);
  }

  out << "\n[grid]\n";
  kvd("omega_min_hz", cfg.omega_min_hz);
  kvd("omega_max_hz", cfg.omega_max_hz);

  out << "\n[tau]\n";
  kvd("half_span_s", cfg.tau_half_span_s);
  kvd("step_s", cfg.tau_step_s);

  out << "\n[state]\n";
  switch (cfg.state.kind) {
    case ThermalState::Kind::vacuum:
      kv("kind", "vacuum");
      break;
    case ThermalState::Kind::blackbody:
      kv("kind", "blackbody");
      kvd("temperature_k", cfg.state.temperature_k);
      break;
    case ThermalState::Kind::custom: {
      kv("kind", "custom");
      std::string items;
      for (std::size_t i = 0; i < cfg.state.custom_nbar.size(); ++i) {
        if (i) items += ",";
        items += format_double(cfg.state.custom_nbar[i]);
      }
      kv("custom_nbar", items);
      break;
    }
  }

  out << "\n[calibration]\n";
  kvd("k_cal", cfg.k_cal);
  kv("include_envelope", cfg.include_envelope ? "true" : "false");
  kv("include_exit_facet", cfg.include_exit_facet ? "true" : "false");
  kvd("lowpass_cutoff_hz", cfg.lowpass_cutoff_hz);
  kvd("extraction_floor_rel", cfg.extraction_floor_rel);

  if (!cfg.delta_x_list_m.empty() || !cfg.spatial_states.empty()) {
    out << "\n[spatial]\n";
    if (!cfg.delta_x_list_m.empty()) {
      std::string items;
      for (std::size_t i = 0; i < cfg.delta_x_list_m.size(); ++i) {
        if (i) items += ",";
        items += format_double(cfg.delta_x_list_m[i]);
      }
      kv("delta_x_list_m", items);
    }
    if (!cfg.spatial_states.empty()) {
      std::string items;
      for (std::size_t i = 0; i < cfg.spatial_states.size(); ++i) {
        if (i) items += ",";
        items += state_spec_string(cfg.spatial_states[i]);
      }
      kv("states", items);
    }
  }

  out << "\n[noise]\n";
  out << "seed = " << cfg.seed << "\n";
  kvd("shot_sigma", cfg.shot_sigma);
  kvd("drift_amplitude", cfg.drift_amplitude);
  kvd("drift_knee_hz", cfg.drift_knee_hz);
  kvd("f_rep_hz", cfg.f_rep_hz);
  out << "n_pulses = " << cfg.n_pulses << "\n";
  kvd("target_sigma", cfg.target_sigma);

  out << "\n[output]\n";
  kv("dir", cfg.out_dir);
  return out.str();
}

DispersionModel dispersion_from(const ExperimentConfig& cfg) {
  const auto it = cfg.materials.find(cfg.material);
  if (it == cfg.materials.end())
    throw config_error("[crystal] material: references unknown material '" +
                       cfg.material + "'");
  const MaterialParams& mat = it->second;
  DispersionModel model;
  model.eps_inf = mat.eps_inf;
  model.oscillator_strength_s = mat.oscillator_strength;
  model.phonon_freq_to = 2.0 * k_pi * mat.phonon_freq_hz;
  model.damping_gamma_10k = 2.0 * k_pi * mat.gamma_10k_hz;
  model.damping_gamma_300k = 2.0 * k_pi * mat.gamma_300k_hz;
  model.temperature_t_crystal = cfg.temperature_k;
  return model;
}

CrystalParams crystal_from(const ExperimentConfig& cfg) {
  CrystalParams params;
  params.length_l = cfg.length_m;
  params.eo_coefficient_r41 = cfg.r41_m_per_v;
  params.refr_index_nir_n = cfg.n_nir;
  params.group_index_nir_ng = cfg.ng_nir;
  params.probe_freq_omega_p = 2.0 * k_pi * cfg.probe_freq_hz;
  params.probe_intensity_ip = cfg.probe_intensity_w_m2;
  params.probe_duration_fwhm = cfg.probe_fwhm_s;
  params.probe_waist_w0 = cfg.probe_waist_m;
  params.epsilon_r = cfg.epsilon_r;
  params.transverse_width_wt = cfg.transverse_width_m;
  return params;
}

ResponsivityOptions responsivity_options_from(const ExperimentConfig& cfg) {
  return {cfg.include_envelope, cfg.include_exit_facet};
}

NoiseModel noise_from(const ExperimentConfig& cfg) {
  return {cfg.shot_sigma, cfg.drift_amplitude, cfg.drift_knee_hz, cfg.seed};
}

std::size_t tau_n_half_from(const ExperimentConfig& cfg) {
  return static_cast<std::size_t>(
      std::llround(cfg.tau_half_span_s / cfg.tau_step_s));
}

std::vector<double> taus_from(const ExperimentConfig& cfg) {
  return symmetric_taus(cfg.tau_step_s, tau_n_half_from(cfg));
}

FrequencyGrid grid_from(const ExperimentConfig& cfg) {
  return fft_aligned_grid(cfg.tau_step_s, tau_n_half_from(cfg),
                          2.0 * k_pi * cfg.omega_min_hz,
                          2.0 * k_pi * cfg.omega_max_hz, cfg.epsilon_r,
                          cfg.probe_waist_m);
}

}  // namespace veo
