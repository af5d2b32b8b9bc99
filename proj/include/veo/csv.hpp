#pragma once

#include <string>
#include <vector>

#include "veo/acquisition.hpp"
#include "veo/correlation.hpp"

namespace veo {

// Shortest decimal form that parses back to the identical double
// (std::to_chars); infinities serialize as "inf"/"-inf", never as a float
// infinity bit pattern leaking into text as e.g. "1e999".
std::string format_double(double v);
double parse_double(const std::string& s, const std::string& what);

// Crystal-optics export, one row per grid point.
struct OpticsTable {
  std::vector<double> omega_hz, n_real, n_imag, alpha_per_m, t_field, l_coh_m,
      r_abs, r_arg;
};

// All writers emit LF line endings, '.' decimal separators, SI units.
void write_optics_csv(const std::string& path, const OpticsTable& table);
OpticsTable read_optics_csv(const std::string& path);

void write_trace_csv(const std::string& path, const CorrelationTrace& trace);
CorrelationTrace read_trace_csv(const std::string& path);

void write_spectrum_csv(const std::string& path, const Spectrum& spec);
Spectrum read_spectrum_csv(const std::string& path);

// Invalid bins serialize with an empty n_mean cell and valid=0, never as 0.
void write_photons_csv(const std::string& path, const PhotonExtraction& ext);
PhotonExtraction read_photons_csv(const std::string& path);

void write_record_csv(const std::string& path, const PulseTrainRecord& rec);
PulseTrainRecord read_record_csv(const std::string& path, double f_rep = 8e7);

void write_allan_csv(const std::string& path, const AllanCurve& curve);
AllanCurve read_allan_csv(const std::string& path);

struct SpatialTable {
  std::vector<double> delta_x_m, g1_pp;
};
void write_spatial_csv(const std::string& path, const SpatialTable& table);
SpatialTable read_spatial_csv(const std::string& path);

}  // namespace veo
