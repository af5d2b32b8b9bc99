#pragma once

#include <cstdint>
#include <vector>

#include "veo/crystal.hpp"
#include "veo/grid.hpp"

namespace veo {

// Radiation-field description: vacuum, blackbody at a temperature, or an
// explicit per-mode occupation array matching a grid.
struct ThermalState {
  enum class Kind { vacuum, blackbody, custom };
  Kind kind = Kind::vacuum;
  double temperature_k = 0.0;        // blackbody only
  std::vector<double> custom_nbar;   // custom only, one entry per grid point
};

// Bose-Einstein occupation 1/(exp(hbar*omega/kB/T) - 1); 0 for T = 0.
// Throws numeric_error for omega <= 0 or T < 0.
double bose_einstein(double omega, double t_kelvin);

// Per-grid-point occupation for a state. Throws numeric_error if a custom
// array does not match the grid size.
std::vector<double> occupation(const ThermalState& state,
                               const FrequencyGrid& grid);

// Sampled first-order electro-optic field correlation over a symmetric,
// uniformly stepped tau grid; values in V^2/m^2.
struct CorrelationTrace {
  std::vector<double> tau;    // s
  std::vector<double> value;  // V^2/m^2
  double delta_x = 0.0;       // m, transverse probe separation
};

// One-sided spectrum of a trace on DFT-aligned bins.
struct Spectrum {
  std::vector<double> omega;  // rad/s, bin k at k*2*pi/(N*dtau)
  std::vector<double> psd;    // V^2/m^2 per bin (trace units times dtau)
};

// G1(tau) = k_cal * sum_k weight_k * (1 + 2*nbar_k) * |R_k|^2 * cos(w_k*tau).
// The positive-tau half is computed and mirrored, so the even symmetry of the
// result is exact. Throws numeric_error if the responsivity grid differs from
// grid or the tau grid is not uniform/symmetric.
CorrelationTrace g1_temporal(const FrequencyGrid& grid,
                             const ThermalState& state,
                             const Responsivity& resp,
                             const std::vector<double>& taus, double k_cal);

// Transverse overlap kernel F(delta_x) = exp(-delta_x^2/(2*wt^2)): the
// normalized cosine transform of the Gaussian transverse weight
// W(k_perp) ~ exp(-k_perp^2*wt^2/2), with F(0) = 1.
double transverse_kernel(double delta_x, double transverse_width_wt);

// Spatial extension of g1_temporal: every mode contribution is multiplied by
// the transverse kernel at delta_x (delta_x >= 0 required).
CorrelationTrace g1_spatial(const FrequencyGrid& grid,
                            const ThermalState& state,
                            const Responsivity& resp,
                            const CrystalParams& params, double delta_x,
                            const std::vector<double>& taus, double k_cal);

// One-sided real Fourier transform psd_k = dtau * sum_j v_j cos(w_k tau_j)
// on bins k = 0..(N-1)/2. Requires a uniform tau grid symmetric around 0
// (odd point count).
Spectrum power_spectrum(const CorrelationTrace& trace);

// Exact inverse of power_spectrum on the same tau grid (round-trip oracle).
std::vector<double> inverse_power_spectrum(const Spectrum& spec,
                                           const std::vector<double>& taus);

// Zeroes all DFT bins above the cutoff and inverse transforms. Handles
// arbitrary (also noisy, non-even) traces; cutoff <= 0 is rejected.
CorrelationTrace lowpass_filter(const CorrelationTrace& trace, double cutoff);

// max(values) - min(values); rejects an empty trace.
double peak_peak(const CorrelationTrace& trace);

// Extracted mean photon number per mode with per-bin validity flags.
struct PhotonExtraction {
  std::vector<double> omega;    // rad/s
  std::vector<double> n_mean;   // NaN where invalid
  std::vector<std::uint8_t> valid;
};

// nbar_k = (S_hot/S_cold - 1)/2 per bin. Bins whose cold psd is at or below
// floor_rel*max(cold psd) are flagged invalid and never extrapolated.
// Throws numeric_error when the spectra live on different grids.
PhotonExtraction extract_photon_number(const Spectrum& spec_hot,
                                       const Spectrum& spec_cold_vacuum,
                                       double floor_rel = 1e-9);

// Global calibration constant: fixes the vacuum tau=0 peak of g1_temporal to
// target_peak (V^2/m^2). Applied once, to every scenario alike.
double calibrate_k_cal(const FrequencyGrid& grid, const Responsivity& resp,
                       double target_peak = 6.2e-2);

}  // namespace veo
