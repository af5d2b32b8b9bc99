#include "veo/grid.hpp"

#include <cmath>

#include "veo/constants.hpp"
#include "veo/errors.hpp"

namespace veo {

bool FrequencyGrid::same_omegas(const FrequencyGrid& other) const {
  return omega == other.omega;
}

std::vector<double> symmetric_taus(double step, std::size_t n_half) {
  if (step <= 0.0) throw numeric_error("tau step must be positive");
  std::vector<double> taus(2 * n_half + 1);
  for (std::size_t j = 0; j < taus.size(); ++j)
    taus[j] = (static_cast<double>(j) - static_cast<double>(n_half)) * step;
  return taus;
}

double mode_weight(double omega, double cell_width, double eps_r,
                   double probe_waist_w0) {
  const double area = k_pi * probe_waist_w0 * probe_waist_w0 / 2.0;
  return k_hbar * omega / (2.0 * k_eps0 * eps_r) * cell_width /
         (2.0 * k_pi * k_c0) / area;
}

FrequencyGrid fft_aligned_grid(double tau_step, std::size_t tau_n_half,
                               double omega_min, double omega_max,
                               double eps_r, double probe_waist_w0) {
  if (tau_step <= 0.0 || tau_n_half == 0)
    throw numeric_error("tau grid must have positive step and extent");
  if (omega_min <= 0.0 || omega_max <= omega_min)
    throw numeric_error("need 0 < omega_min < omega_max");
  const std::size_t n = 2 * tau_n_half + 1;
  const double bin = 2.0 * k_pi / (static_cast<double>(n) * tau_step);
  auto k_lo = static_cast<std::size_t>(std::ceil(omega_min / bin));
  if (k_lo < 1) k_lo = 1;
  auto k_hi = static_cast<std::size_t>(std::floor(omega_max / bin));
  if (k_hi > tau_n_half) k_hi = tau_n_half;  // one-sided Nyquist limit
  if (k_lo > k_hi)
    throw numeric_error("frequency band holds no DFT bin of the tau grid");
  FrequencyGrid grid;
  grid.omega.reserve(k_hi - k_lo + 1);
  grid.weight.reserve(k_hi - k_lo + 1);
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    const double w = static_cast<double>(k) * bin;
    grid.omega.push_back(w);
    grid.weight.push_back(mode_weight(w, bin, eps_r, probe_waist_w0));
  }
  return grid;
}

}  // namespace veo
