#pragma once

#include <cstddef>
#include <vector>

namespace veo {

// Discretization of the THz mode continuum. omega is strictly increasing and
// positive; weight[i] is the field-variance contribution of grid cell i in
// V^2/m^2 per cosine term: hbar*Omega/(2*eps0*eps_r) * dOmega/(2*pi*c0),
// divided by the probe mode area pi*w0^2/2 (1-D spectral density of a beam
// confined to the probe focus). Weights scale linearly with cell width, so a
// 2x refinement leaves weighted sums unchanged up to discretization error.
struct FrequencyGrid {
  std::vector<double> omega;   // rad/s
  std::vector<double> weight;  // V^2/m^2

  std::size_t size() const { return omega.size(); }
  bool same_omegas(const FrequencyGrid& other) const;
};

// Uniform symmetric delay grid tau_j = (j - n_half)*step, j = 0..2*n_half.
std::vector<double> symmetric_taus(double step, std::size_t n_half);

// Frequency grid aligned to the DFT bins of the symmetric tau grid:
// Omega_k = k * 2*pi/(N*step) with N = 2*n_half + 1, restricted to
// [omega_min, omega_max]. Alignment makes the power spectrum of a simulated
// trace exactly diagonal (no leakage), which keeps psd >= 0 to round-off and
// the photon-number round trip exact.
FrequencyGrid fft_aligned_grid(double tau_step, std::size_t tau_n_half,
                               double omega_min, double omega_max,
                               double eps_r, double probe_waist_w0);

// Mode weight of a single cell (exposed for custom grids in tests).
double mode_weight(double omega, double cell_width, double eps_r,
                   double probe_waist_w0);

}  // namespace veo
