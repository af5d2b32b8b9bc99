#include "veo/crystal.hpp"

#include <cmath>

#include "veo/constants.hpp"
#include "veo/errors.hpp"

namespace veo {

double DispersionModel::damping_gamma() const {
  double t = temperature_t_crystal;
  if (t < 10.0) t = 10.0;
  if (t > 300.0) t = 300.0;
  return damping_gamma_10k +
         (damping_gamma_300k - damping_gamma_10k) * (t - 10.0) / 290.0;
}

std::complex<double> dielectric_function(const DispersionModel& model,
                                         double omega) {
  const double w2 = model.phonon_freq_to * model.phonon_freq_to;
  const std::complex<double> denom(w2 - omega * omega,
                                   -model.damping_gamma() * omega);
  return model.eps_inf + model.oscillator_strength_s * w2 / denom;
}

std::complex<double> thz_refractive_index(const DispersionModel& model,
                                          double omega) {
  if (omega <= 0.0)
    throw numeric_error("thz_refractive_index: omega must be positive");
  // Im(eps) >= 0 for a passive medium, so the principal sqrt already lands
  // on the branch with Re >= 0 and Im >= 0.
  return std::sqrt(dielectric_function(model, omega));
}

double absorption_coefficient(const DispersionModel& model, double omega) {
  return 2.0 * omega * thz_refractive_index(model, omega).imag() / k_c0;
}

double field_transmission(const DispersionModel& model,
                          const CrystalParams& params, double omega) {
  const std::complex<double> n = thz_refractive_index(model, omega);
  const double alpha = 2.0 * omega * n.imag() / k_c0;
  const double entry = std::abs(2.0 / (1.0 + n));
  const double exit = std::abs(2.0 * n / (1.0 + n));
  return entry * std::exp(-alpha * params.length_l / 2.0) * exit;
}

double coherence_length(const DispersionModel& model,
                        const CrystalParams& params, double omega,
                        double dn_epsilon) {
  const double dn = std::abs(thz_refractive_index(model, omega).real() -
                             params.group_index_nir_ng);
  if (dn < dn_epsilon) return k_unbounded_length;
  return k_pi * k_c0 / (omega * dn);
}

std::complex<double> phase_match_factor(double dk, double alpha, double l) {
  const std::complex<double> xi(-alpha * l / 2.0, dk * l);
  if (std::abs(xi) < 1e-8) return 1.0 + xi / 2.0;
  return (std::exp(xi) - 1.0) / xi;
}

Responsivity responsivity(const DispersionModel& model,
                          const CrystalParams& params,
                          const FrequencyGrid& grid,
                          ResponsivityOptions options) {
  if (grid.size() == 0) throw numeric_error("responsivity: empty grid");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid.omega[i] < grid.omega[i + 1]))
      throw numeric_error("responsivity: grid must be strictly increasing");
  if (grid.omega.front() <= 0.0)
    throw numeric_error("responsivity: grid frequencies must be positive");

  const double sigma_t =
      params.probe_duration_fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  Responsivity resp;
  resp.grid = grid;
  resp.value.reserve(grid.size());
  for (double omega : grid.omega) {
    const std::complex<double> n = thz_refractive_index(model, omega);
    const double alpha = 2.0 * omega * n.imag() / k_c0;
    const double dk =
        omega * (n.real() - params.group_index_nir_ng) / k_c0;
    const double t_entry = 2.0 / (1.0 + n.real());
    const double env = options.include_envelope
                           ? std::exp(-omega * omega * sigma_t * sigma_t)
                           : 1.0;
    std::complex<double> r =
        t_entry * env * phase_match_factor(dk, alpha, params.length_l);
    if (options.include_exit_facet)
      r *= 2.0 * n.real() / (1.0 + n.real());
    resp.value.push_back(r);
  }
  return resp;
}

}  // namespace veo
