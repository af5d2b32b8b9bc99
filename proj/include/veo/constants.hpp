#pragma once

// Physical constants (CODATA 2018), SI units throughout.

namespace veo {

inline constexpr double k_hbar = 1.054571817e-34;    // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K
inline constexpr double k_c0 = 299792458.0;          // m/s
inline constexpr double k_eps0 = 8.8541878128e-12;   // F/m
inline constexpr double k_pi = 3.141592653589793238462643383279502884;

}  // namespace veo
