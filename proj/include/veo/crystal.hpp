#pragma once

#include <complex>
#include <limits>
#include <vector>

#include "veo/grid.hpp"

namespace veo {

// Material and geometry constants of the electro-optic detection crystal.
struct CrystalParams {
  double length_l = 3e-3;                  // m
  double eo_coefficient_r41 = 4e-12;       // m/V
  double refr_index_nir_n = 2.85;          // at the probe frequency
  double group_index_nir_ng = 3.25;        // probe group index
  double probe_freq_omega_p = 2.356194490192345e15;  // rad/s (2*pi*375 THz)
  double probe_intensity_ip = 1e13;        // W/m^2
  double probe_duration_fwhm = 80e-15;     // s, intensity FWHM
  double probe_waist_w0 = 125e-6;          // m
  double epsilon_r = 10.0;                 // THz-band dielectric constant
  double transverse_width_wt = 2.8e-4;     // m, transverse overlap width
};

// Single-oscillator Lorentz (phonon-polariton) dielectric model. The crystal
// temperature enters only through the damping rate, interpolated linearly
// between the 10 K and 300 K table values and clamped outside that range.
struct DispersionModel {
  double eps_inf = 7.44;
  double phonon_freq_to = 3.34265458341954e13;   // rad/s (2*pi*5.32 THz)
  double oscillator_strength_s = 2.7;
  double damping_gamma_10k = 1.8849555921538758e11;   // rad/s (2*pi*0.03 THz)
  double damping_gamma_300k = 3.141592653589793e11;   // rad/s (2*pi*0.05 THz)
  double temperature_t_crystal = 4.0;                 // K

  double damping_gamma() const;  // at temperature_t_crystal
};

// Complex permittivity eps_inf + S*w_TO^2/(w_TO^2 - w^2 - i*gamma*w).
std::complex<double> dielectric_function(const DispersionModel& model,
                                         double omega);

// Complex index sqrt(eps), branch with Re >= 0 and Im >= 0. Throws
// numeric_error for omega <= 0.
std::complex<double> thz_refractive_index(const DispersionModel& model,
                                          double omega);

// Intensity absorption coefficient alpha = 2*omega*Im(n)/c0, 1/m.
double absorption_coefficient(const DispersionModel& model, double omega);

// Single-pass field transmission through the slab: Fresnel entry and exit
// amplitudes times the bulk decay exp(-alpha*l/2). Etalon fringes ignored.
double field_transmission(const DispersionModel& model,
                          const CrystalParams& params, double omega);

// Phase-matching coherence length pi*c0/(omega*|Re(n) - ng|). Returns the
// unbounded sentinel (+infinity) when the index mismatch is below dn_epsilon;
// serialization is responsible for never emitting a float infinity.
double coherence_length(const DispersionModel& model,
                        const CrystalParams& params, double omega,
                        double dn_epsilon = 1e-9);
inline constexpr double k_unbounded_length =
    std::numeric_limits<double>::infinity();

// Closed form of (1/l) * int_0^l exp(i*dk*z - alpha*z/2) dz.
std::complex<double> phase_match_factor(double dk, double alpha, double l);

struct ResponsivityOptions {
  bool include_envelope = true;    // probe autocorrelation filter
  bool include_exit_facet = false; // THz exit Fresnel factor
};

// Frequency response of electro-optic detection on a grid.
struct Responsivity {
  FrequencyGrid grid;
  std::vector<std::complex<double>> value;  // dimensionless, |R| <= 1
};

// R(Omega) = t_entry * envelope * phase_match [* t_exit], with
// t_entry = 2/(1 + Re n), envelope = exp(-Omega^2*sigma_t^2) where sigma_t is
// derived from the probe intensity FWHM, and the closed-form phase-matching
// integral above. Throws numeric_error on an empty or non-increasing grid.
Responsivity responsivity(const DispersionModel& model,
                          const CrystalParams& params,
                          const FrequencyGrid& grid,
                          ResponsivityOptions options = {});

}  // namespace veo
