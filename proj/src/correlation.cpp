#include "veo/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "veo/constants.hpp"
#include "veo/errors.hpp"

namespace veo {

namespace {

// Center index of a symmetric tau grid; validates uniform step and symmetry.
std::size_t validate_symmetric_taus(const std::vector<double>& taus) {
  if (taus.size() < 3 || taus.size() % 2 == 0)
    throw numeric_error("tau grid must be symmetric around 0 (odd size)");
  const double step = taus[1] - taus[0];
  if (step <= 0.0) throw numeric_error("tau grid must be increasing");
  const double tol = 1e-9 * step;
  for (std::size_t j = 1; j < taus.size(); ++j)
    if (std::abs(taus[j] - taus[j - 1] - step) > tol)
      throw numeric_error("tau grid must be uniform");
  const std::size_t center = taus.size() / 2;
  if (std::abs(taus[center]) > tol)
    throw numeric_error("tau grid must be symmetric around 0");
  return center;
}

double uniform_step(const std::vector<double>& taus) {
  if (taus.size() < 2) throw numeric_error("trace too short");
  const double step = taus[1] - taus[0];
  const double tol = 1e-9 * std::abs(step);
  for (std::size_t j = 1; j < taus.size(); ++j)
    if (std::abs(taus[j] - taus[j - 1] - step) > tol)
      throw numeric_error("tau grid must be uniform");
  return step;
}

// Mode coefficients k_cal * w_k * (1 + 2 nbar_k) * |R_k|^2.
std::vector<double> mode_coefficients(const FrequencyGrid& grid,
                                      const ThermalState& state,
                                      const Responsivity& resp,
                                      double k_cal) {
  if (!grid.same_omegas(resp.grid) || resp.value.size() != grid.size())
    throw numeric_error("responsivity grid does not match frequency grid");
  const std::vector<double> nbar = occupation(state, grid);
  std::vector<double> coeff(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    coeff[k] = k_cal * grid.weight[k] * (1.0 + 2.0 * nbar[k]) *
               std::norm(resp.value[k]);
  return coeff;
}

CorrelationTrace trace_from_coefficients(const FrequencyGrid& grid,
                                         const std::vector<double>& coeff,
                                         const std::vector<double>& taus,
                                         double delta_x) {
  const std::size_t center = validate_symmetric_taus(taus);
  CorrelationTrace trace;
  trace.tau = taus;
  trace.value.assign(taus.size(), 0.0);
  trace.delta_x = delta_x;
  // Evaluate the cosine sum for tau >= 0 and mirror, so even symmetry holds
  // bit-exactly.
  for (std::size_t d = 0; d + center < taus.size(); ++d) {
    const double tau = taus[center + d];
    double v = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
      v += coeff[k] * std::cos(grid.omega[k] * tau);
    trace.value[center + d] = v;
    trace.value[center - d] = v;
  }
  return trace;
}

}  // namespace

double bose_einstein(double omega, double t_kelvin) {
  if (omega <= 0.0) throw numeric_error("bose_einstein: omega must be positive");
  if (t_kelvin < 0.0) throw numeric_error("bose_einstein: negative temperature");
  if (t_kelvin == 0.0) return 0.0;
  return 1.0 / std::expm1(k_hbar * omega / (k_boltzmann * t_kelvin));
}

std::vector<double> occupation(const ThermalState& state,
                               const FrequencyGrid& grid) {
  switch (state.kind) {
    case ThermalState::Kind::vacuum:
      return std::vector<double>(grid.size(), 0.0);
    case ThermalState::Kind::blackbody: {
      std::vector<double> nbar(grid.size());
      for (std::size_t k = 0; k < grid.size(); ++k)
        nbar[k] = bose_einstein(grid.omega[k], state.temperature_k);
      return nbar;
    }
    case ThermalState::Kind::custom:
      if (state.custom_nbar.size() != grid.size())
        throw numeric_error("custom occupation array does not match grid");
      return state.custom_nbar;
  }
  throw numeric_error("unknown thermal state kind");
}

CorrelationTrace g1_temporal(const FrequencyGrid& grid,
                             const ThermalState& state,
                             const Responsivity& resp,
                             const std::vector<double>& taus, double k_cal) {
  return trace_from_coefficients(
      grid, mode_coefficients(grid, state, resp, k_cal), taus, 0.0);
}

double transverse_kernel(double delta_x, double transverse_width_wt) {
  if (delta_x < 0.0) throw numeric_error("transverse_kernel: delta_x < 0");
  if (transverse_width_wt <= 0.0)
    throw numeric_error("transverse_kernel: width must be positive");
  const double r = delta_x / transverse_width_wt;
  return std::exp(-r * r / 2.0);
}

CorrelationTrace g1_spatial(const FrequencyGrid& grid,
                            const ThermalState& state,
                            const Responsivity& resp,
                            const CrystalParams& params, double delta_x,
                            const std::vector<double>& taus, double k_cal) {
  std::vector<double> coeff = mode_coefficients(grid, state, resp, k_cal);
  const double f = transverse_kernel(delta_x, params.transverse_width_wt);
  for (double& c : coeff) c *= f;
  return trace_from_coefficients(grid, coeff, taus, delta_x);
}

Spectrum power_spectrum(const CorrelationTrace& trace) {
  const std::size_t center = validate_symmetric_taus(trace.tau);
  if (trace.value.size() != trace.tau.size())
    throw numeric_error("trace value/tau size mismatch");
  const std::size_t n = trace.tau.size();
  const double dtau = trace.tau[1] - trace.tau[0];
  const double bin = 2.0 * k_pi / (static_cast<double>(n) * dtau);
  Spectrum spec;
  spec.omega.resize(center + 1);
  spec.psd.resize(center + 1);
  for (std::size_t k = 0; k <= center; ++k) {
    const double w = static_cast<double>(k) * bin;
    double s = trace.value[center];
    for (std::size_t j = 1; j <= center; ++j)
      s += (trace.value[center + j] + trace.value[center - j]) *
           std::cos(w * static_cast<double>(j) * dtau);
    spec.omega[k] = w;
    spec.psd[k] = dtau * s;
  }
  return spec;
}

std::vector<double> inverse_power_spectrum(const Spectrum& spec,
                                           const std::vector<double>& taus) {
  const std::size_t center = validate_symmetric_taus(taus);
  if (spec.omega.size() != center + 1)
    throw numeric_error("spectrum does not match tau grid");
  const std::size_t n = taus.size();
  const double dtau = taus[1] - taus[0];
  std::vector<double> value(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double tau = taus[j];
    double v = spec.psd[0];
    for (std::size_t k = 1; k <= center; ++k)
      v += 2.0 * spec.psd[k] * std::cos(spec.omega[k] * tau);
    value[j] = v / (static_cast<double>(n) * dtau);
  }
  return value;
}

CorrelationTrace lowpass_filter(const CorrelationTrace& trace, double cutoff) {
  if (cutoff <= 0.0) throw numeric_error("lowpass_filter: cutoff <= 0");
  if (trace.value.size() != trace.tau.size())
    throw numeric_error("trace value/tau size mismatch");
  const double dtau = uniform_step(trace.tau);
  const std::size_t n = trace.value.size();
  // Full complex DFT so noisy (non-even) traces keep their phase content.
  std::vector<std::complex<double>> roots(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double phase = -2.0 * k_pi * static_cast<double>(i) /
                         static_cast<double>(n);
    roots[i] = {std::cos(phase), std::sin(phase)};
  }
  std::vector<std::complex<double>> bins(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      acc += trace.value[j] * roots[(k * j) % n];
    bins[k] = acc;
  }
  const double bin_width = 2.0 * k_pi / (static_cast<double>(n) * dtau);
  for (std::size_t k = 0; k < n; ++k) {
    const double idx = (k <= n / 2) ? static_cast<double>(k)
                                    : static_cast<double>(k) -
                                          static_cast<double>(n);
    if (std::abs(idx) * bin_width > cutoff) bins[k] = 0.0;
  }
  CorrelationTrace out;
  out.tau = trace.tau;
  out.delta_x = trace.delta_x;
  out.value.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      acc += bins[k] * std::conj(roots[(k * j) % n]);
    out.value[j] = acc.real() / static_cast<double>(n);
  }
  return out;
}

double peak_peak(const CorrelationTrace& trace) {
  if (trace.value.empty()) throw numeric_error("peak_peak: empty trace");
  const auto [lo, hi] =
      std::minmax_element(trace.value.begin(), trace.value.end());
  return *hi - *lo;
}

PhotonExtraction extract_photon_number(const Spectrum& spec_hot,
                                       const Spectrum& spec_cold_vacuum,
                                       double floor_rel) {
  if (spec_hot.omega != spec_cold_vacuum.omega)
    throw numeric_error("extract_photon_number: spectra on different grids");
  const std::size_t n = spec_hot.omega.size();
  double cold_max = 0.0;
  for (double s : spec_cold_vacuum.psd) cold_max = std::max(cold_max, s);
  const double floor = floor_rel * cold_max;
  PhotonExtraction ext;
  ext.omega = spec_hot.omega;
  ext.n_mean.assign(n, std::numeric_limits<double>::quiet_NaN());
  ext.valid.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const double cold = spec_cold_vacuum.psd[k];
    if (cold > floor) {
      ext.n_mean[k] = 0.5 * (spec_hot.psd[k] / cold - 1.0);
      ext.valid[k] = 1;
    }
  }
  return ext;
}

double calibrate_k_cal(const FrequencyGrid& grid, const Responsivity& resp,
                       double target_peak) {
  if (!grid.same_omegas(resp.grid) || resp.value.size() != grid.size())
    throw numeric_error("responsivity grid does not match frequency grid");
  double peak = 0.0;  // vacuum tau=0 value at k_cal = 1
  for (std::size_t k = 0; k < grid.size(); ++k)
    peak += grid.weight[k] * std::norm(resp.value[k]);
  if (peak <= 0.0) throw numeric_error("calibrate_k_cal: empty response");
  return target_peak / peak;
}

}  // namespace veo
