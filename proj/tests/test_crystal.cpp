#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "veo/constants.hpp"
#include "veo/crystal.hpp"
#include "veo/errors.hpp"
#include "veo/rng.hpp"

using namespace veo;

namespace {

DispersionModel cold_model() { return {}; }  // defaults are the 4 K scenario

DispersionModel warm_model() {
  DispersionModel m;
  m.temperature_t_crystal = 300.0;
  return m;
}

FrequencyGrid default_grid() {
  return fft_aligned_grid(10e-15, 500, 2.0 * k_pi * 0.05e12,
                          2.0 * k_pi * 4.5e12, 10.0, 125e-6);
}

// Composite Simpson quadrature of (1/l) * int_0^l exp((i*dk - alpha/2) z) dz,
// the independent oracle for the closed-form phase-matching factor.
std::complex<double> quadrature_pm(double dk, double alpha, double l,
                                   int intervals) {
  const std::complex<double> rate(-alpha / 2.0, dk);
  auto f = [&](double z) { return std::exp(rate * z); };
  const double h = l / intervals;
  std::complex<double> acc = f(0.0) + f(l);
  for (int i = 1; i < intervals; ++i)
    acc += f(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0 / l;
}

}  // namespace

TEST_CASE("damping interpolates between the 10 K and 300 K table points") {
  DispersionModel m;
  m.temperature_t_crystal = 10.0;
  CHECK(m.damping_gamma() == m.damping_gamma_10k);
  m.temperature_t_crystal = 300.0;
  CHECK(m.damping_gamma() == m.damping_gamma_300k);
  m.temperature_t_crystal = 155.0;
  CHECK(m.damping_gamma() ==
        doctest::Approx((m.damping_gamma_10k + m.damping_gamma_300k) / 2.0)
            .epsilon(1e-15));
  m.temperature_t_crystal = 4.0;  // clamped below the table
  CHECK(m.damping_gamma() == m.damping_gamma_10k);
  m.temperature_t_crystal = 400.0;  // clamped above
  CHECK(m.damping_gamma() == m.damping_gamma_300k);
}

TEST_CASE("refractive index: static limit of the Lorentz oscillator") {
  DispersionModel m;
  m.damping_gamma_10k = 0.0;
  m.damping_gamma_300k = 0.0;
  const auto n = thz_refractive_index(m, 1e6);  // omega -> 0
  CHECK(n.real() ==
        doctest::Approx(std::sqrt(m.eps_inf + m.oscillator_strength_s))
            .epsilon(1e-9));
  CHECK(std::abs(n.imag()) < 1e-12);
}

TEST_CASE("refractive index: frozen values at 1 THz") {
  const double omega = 2.0 * k_pi * 1e12;
  const auto n4 = thz_refractive_index(cold_model(), omega);
  CHECK(n4.real() == doctest::Approx(3.199826441653522).epsilon(1e-12));
  CHECK(n4.imag() ==
        doctest::Approx(4.8056229213640564e-4).epsilon(1e-12));
  const auto n300 = thz_refractive_index(warm_model(), omega);
  CHECK(n300.real() == doctest::Approx(3.199825567064782).epsilon(1e-12));
  CHECK(n300.imag() == doctest::Approx(8.009356533193436e-4).epsilon(1e-12));
  CHECK(n4.real() > 3.1);
  CHECK(n4.real() < 3.3);
}

TEST_CASE("refractive index: Im n peaks at the phonon resonance") {
  const DispersionModel m = cold_model();
  double best_omega = 0.0, best_im = -1.0;
  for (double f = 0.1e12; f <= 8.0e12; f += 0.05e12) {
    const double im = thz_refractive_index(m, 2.0 * k_pi * f).imag();
    if (im > best_im) {
      best_im = im;
      best_omega = 2.0 * k_pi * f;
    }
  }
  CHECK(std::abs(best_omega - m.phonon_freq_to) <
        2.0 * k_pi * 0.05e12 + 1e-3);
}

TEST_CASE("refractive index rejects non-positive frequency") {
  CHECK_THROWS_AS((void)thz_refractive_index(cold_model(), 0.0),
                  numeric_error);
  CHECK_THROWS_AS((void)thz_refractive_index(cold_model(), -1.0),
                  numeric_error);
}

TEST_CASE("field transmission: lossless Fresnel product") {
  DispersionModel m;
  m.eps_inf = 3.17 * 3.17;
  m.oscillator_strength_s = 0.0;
  const CrystalParams params;
  const double t = field_transmission(m, params, 2.0 * k_pi * 1e12);
  CHECK(t == doctest::Approx(4.0 * 3.17 / (4.17 * 4.17)).epsilon(1e-12));
  CHECK(t == doctest::Approx(0.7292008120122607).epsilon(1e-12));
}

TEST_CASE("field transmission: opaque and identity limits") {
  const CrystalParams params;
  // At the phonon resonance the default crystal is opaque over 3 mm.
  CHECK(field_transmission(cold_model(), params,
                           cold_model().phonon_freq_to) < 1e-30);
  DispersionModel vacuum_like;
  vacuum_like.eps_inf = 1.0;
  vacuum_like.oscillator_strength_s = 0.0;
  CHECK(field_transmission(vacuum_like, params, 2.0 * k_pi * 1e12) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("field transmission stays in [0,1] for all scenario temperatures") {
  const CrystalParams params;
  const FrequencyGrid grid = default_grid();
  for (double t_crystal : {4.0, 45.0, 300.0}) {
    DispersionModel m;
    m.temperature_t_crystal = t_crystal;
    for (double omega : grid.omega) {
      const double t = field_transmission(m, params, omega);
      CHECK(t >= 0.0);
      CHECK(t <= 1.0);
    }
  }
}

TEST_CASE("more damping never raises in-band transmission") {
  // On the low-frequency wing of the resonance, extra damping only adds
  // absorption. (At the exact resonance peak a Lorentz oscillator thins out
  // with damping instead, but the 3 mm slab is fully opaque there either
  // way: both transmissions underflow to zero.)
  const CrystalParams params;
  DispersionModel base = cold_model();
  DispersionModel damped = base;
  damped.damping_gamma_10k *= 2.0;
  damped.damping_gamma_300k *= 2.0;
  for (double omega : default_grid().omega)
    CHECK(field_transmission(damped, params, omega) <=
          field_transmission(base, params, omega) + 1e-15);
  CHECK(field_transmission(damped, params, base.phonon_freq_to) ==
        field_transmission(base, params, base.phonon_freq_to));
}

TEST_CASE("coherence length: frozen value and oracle duplication") {
  const CrystalParams params;
  const DispersionModel m = cold_model();
  const double omega = 2.0 * k_pi * 1e12;
  const double lc = coherence_length(m, params, omega);
  CHECK(lc == doctest::Approx(0.0029875542803816757).epsilon(1e-12));
  // Oracle duplication: recompute pi*c/(omega*|dn|) from the index directly.
  const double dn = std::abs(thz_refractive_index(m, omega).real() -
                             params.group_index_nir_ng);
  CHECK(lc == k_pi * k_c0 / (omega * dn));
}

TEST_CASE("coherence length: unbounded sentinel and monotone tail") {
  const CrystalParams params;
  const DispersionModel m = cold_model();
  // A generous epsilon forces the below-mismatch branch.
  CHECK(std::isinf(coherence_length(m, params, 2.0 * k_pi * 1e12, 10.0)));
  CHECK(coherence_length(m, params, 2.0 * k_pi * 1e12, 10.0) ==
        k_unbounded_length);
  // Above the matching point (~1.96 THz) the mismatch grows with frequency,
  // so l_c must fall.
  double prev = std::numeric_limits<double>::infinity();
  for (double f = 2.2e12; f <= 4.5e12; f += 0.1e12) {
    const double lc = coherence_length(m, params, 2.0 * k_pi * f);
    CHECK(lc < prev);
    prev = lc;
  }
}

TEST_CASE("phase matching factor: sinc null and unit limit") {
  const double l = 3e-3;
  CHECK(std::abs(phase_match_factor(2.0 * k_pi / l, 0.0, l)) < 1e-12);
  CHECK(std::abs(phase_match_factor(0.0, 0.0, l) - 1.0) < 1e-12);
}

TEST_CASE("phase matching factor equals quadrature on random draws") {
  GaussianStream rng(42);
  for (int i = 0; i < 100; ++i) {
    const double dk = (rng.uniform() - 0.5) * 2.0e4;   // 1/m
    const double alpha = rng.uniform() * 4.0e3;        // 1/m
    const double l = 1e-4 + rng.uniform() * 5e-3;      // m
    const auto closed = phase_match_factor(dk, alpha, l);
    const auto quad = quadrature_pm(dk, alpha, l, 2000);
    CHECK(std::abs(closed - quad) <= 1e-6 * std::max(1.0, std::abs(quad)));
  }
}

TEST_CASE("responsivity: perfectly matched lossless crystal gives |R| = 1") {
  DispersionModel m;
  m.eps_inf = 1.0;
  m.oscillator_strength_s = 0.0;
  CrystalParams params;
  params.group_index_nir_ng = 1.0;  // dk = 0 when n = 1
  FrequencyGrid grid;
  grid.omega = {2.0 * k_pi * 1e12};
  grid.weight = {1.0};
  const Responsivity r =
      responsivity(m, params, grid, {/*envelope=*/false, false});
  CHECK(std::abs(r.value[0]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("responsivity: |R| <= 1 and the DC limit is t_entry * envelope") {
  const DispersionModel m = cold_model();
  const CrystalParams params;
  const FrequencyGrid grid = default_grid();
  const Responsivity r = responsivity(m, params, grid);
  for (const auto& v : r.value) CHECK(std::abs(v) <= 1.0 + 1e-12);

  FrequencyGrid dc;
  dc.omega = {1e8};
  dc.weight = {1.0};
  const Responsivity r_dc = responsivity(m, params, dc);
  const double t_entry =
      2.0 / (1.0 + thz_refractive_index(m, 1e8).real());
  CHECK(std::abs(r_dc.value[0]) == doctest::Approx(t_entry).epsilon(1e-6));
}

TEST_CASE("responsivity: |R|^2 has a local maximum near 2 THz") {
  const DispersionModel m = cold_model();
  const CrystalParams params;
  const FrequencyGrid grid = default_grid();
  const Responsivity r = responsivity(m, params, grid);
  bool found = false;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double h = std::norm(r.value[i]);
    if (h > std::norm(r.value[i - 1]) && h > std::norm(r.value[i + 1])) {
      const double f = grid.omega[i] / (2.0 * k_pi);
      if (f > 1.75e12 && f < 2.25e12) found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("responsivity rejects bad grids") {
  const DispersionModel m = cold_model();
  const CrystalParams params;
  FrequencyGrid empty;
  CHECK_THROWS_AS((void)responsivity(m, params, empty), numeric_error);
  FrequencyGrid backwards;
  backwards.omega = {2.0, 1.0};
  backwards.weight = {1.0, 1.0};
  CHECK_THROWS_AS((void)responsivity(m, params, backwards), numeric_error);
  FrequencyGrid negative;
  negative.omega = {-1.0, 1.0};
  negative.weight = {1.0, 1.0};
  CHECK_THROWS_AS((void)responsivity(m, params, negative), numeric_error);
}

TEST_CASE("mode weight scales linearly with cell width") {
  const double omega = 2.0 * k_pi * 1e12;
  const double w1 = mode_weight(omega, 1e10, 10.0, 125e-6);
  const double w2 = mode_weight(omega, 2e10, 10.0, 125e-6);
  CHECK(w2 == doctest::Approx(2.0 * w1).epsilon(1e-15));
  CHECK(w1 > 0.0);
}

TEST_CASE("fft-aligned grid covers exactly the in-band DFT bins") {
  const FrequencyGrid grid = default_grid();
  REQUIRE(grid.size() == 45);
  const double bin = 2.0 * k_pi / (1001.0 * 10e-15);
  CHECK(grid.omega.front() == doctest::Approx(bin).epsilon(1e-15));
  CHECK(grid.omega.back() == doctest::Approx(45.0 * bin).epsilon(1e-15));
  CHECK(grid.omega.front() / (2.0 * k_pi) ==
        doctest::Approx(99.9000999001e9).epsilon(1e-10));
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    CHECK(grid.omega[i] < grid.omega[i + 1]);
  CHECK_THROWS_AS((void)fft_aligned_grid(10e-15, 500, 2.0 * k_pi * 4.496e12,
                                         2.0 * k_pi * 4.499e12, 10.0, 125e-6),
                  numeric_error);
}
