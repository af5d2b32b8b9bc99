// Acceptance harness: one pass/fail line per criterion, exit code equals the
// number of failed criteria. Tolerances are pinned here, next to each check.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "veo/acquisition.hpp"
#include "veo/config.hpp"
#include "veo/constants.hpp"
#include "veo/correlation.hpp"
#include "veo/crystal.hpp"
#include "veo/grid.hpp"
#include "veo/rng.hpp"

using namespace veo;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

ExperimentConfig load(const std::string& name) {
  return load_config(
      (std::filesystem::path(VEO_CONFIG_DIR) / name).string());
}

struct Scene {
  FrequencyGrid grid;
  DispersionModel model;
  CrystalParams params;
  Responsivity resp;
  std::vector<double> taus;
  ExperimentConfig cfg;
};

Scene scene_from(const ExperimentConfig& cfg) {
  Scene s;
  s.cfg = cfg;
  s.grid = grid_from(cfg);
  s.model = dispersion_from(cfg);
  s.params = crystal_from(cfg);
  s.resp = responsivity(s.model, s.params, s.grid,
                        responsivity_options_from(cfg));
  s.taus = taus_from(cfg);
  return s;
}

CorrelationTrace scene_trace(const Scene& s) {
  return g1_temporal(s.grid, s.cfg.state, s.resp, s.taus, s.cfg.k_cal);
}

int g_failed = 0;

void criterion(int index, const std::string& label, double budget_s,
               const std::function<void(Check&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Check check;
  try {
    body(check);
  } catch (const std::exception& e) {
    check.ok = false;
    check.require(false, std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::string timing = fmt("%.2f s", elapsed);
  if (budget_s > 0.0) {
    timing += fmt(" of %.0f s budget", budget_s);
    if (elapsed > budget_s) {
      check.ok = false;
      check.require(false, "over time budget");
    }
  }
  if (!check.ok) ++g_failed;
  std::printf("[%s] criterion %d: %s (%s; %s)\n", check.ok ? "PASS" : "FAIL",
              index, label.c_str(), check.detail.c_str(), timing.c_str());
  std::fflush(stdout);
}

// Simpson quadrature of (1/l) * int_0^l exp(i*dk*z - alpha*z/2) dz.
std::complex<double> quadrature_pm(double dk, double alpha, double l,
                                   int intervals) {
  const std::complex<double> i_unit(0.0, 1.0);
  auto f = [&](double z) {
    return std::exp(i_unit * (dk * z) - 0.5 * alpha * z);
  };
  const double h = l / intervals;
  std::complex<double> acc = f(0.0) + f(l);
  for (int j = 1; j < intervals; ++j)
    acc += f(j * h) * (j % 2 == 1 ? 4.0 : 2.0);
  return acc * (h / 3.0) / l;
}

}  // namespace

int main() {
  // 1. Calibrated vacuum peak: 6.2e-2 V^2/m^2 at tau = 0, i.e. a field
  //    standard deviation within 0.5 % of 0.25 V/m.
  criterion(1, "calibrated vacuum tau=0 peak", 1.0, [](Check& c) {
    const Scene s = scene_from(load("4k.ini"));
    const double k_cal = calibrate_k_cal(s.grid, s.resp);
    const CorrelationTrace trace =
        g1_temporal(s.grid, ThermalState{}, s.resp, s.taus, k_cal);
    const double peak = trace.value[trace.value.size() / 2];
    c.require(std::abs(peak / 6.2e-2 - 1.0) < 1e-12,
              "peak " + fmt("%.6e", peak) + " vs 6.2e-2");
    const double rms = std::sqrt(peak);
    c.require(std::abs(rms / 0.25 - 1.0) < 5e-3,
              "sqrt(peak) " + fmt("%.4f", rms) + " within 0.5% of 0.25");
    c.require(std::abs(s.cfg.k_cal / k_cal - 1.0) < 1e-9,
              "shipped k_cal matches " + fmt("%.17g", k_cal));
  });

  // 2. The vacuum power spectrum has local maxima near 0.75 THz and 2 THz.
  criterion(2, "vacuum spectrum maxima near 0.75 and 2 THz", 5.0,
            [](Check& c) {
    const Scene s = scene_from(load("4k.ini"));
    const Spectrum spec = power_spectrum(scene_trace(s));
    bool low = false, high = false;
    double f_low = 0.0, f_high = 0.0;
    for (std::size_t i = 1; i + 1 < spec.psd.size(); ++i) {
      if (spec.psd[i] <= spec.psd[i - 1] || spec.psd[i] <= spec.psd[i + 1])
        continue;
      const double f_thz = spec.omega[i] / (2.0 * k_pi * 1e12);
      if (f_thz >= 0.5 && f_thz <= 1.0) low = true, f_low = f_thz;
      if (f_thz >= 1.75 && f_thz <= 2.25) high = true, f_high = f_thz;
    }
    c.require(low, "maximum at " + fmt("%.3f", f_low) + " THz in [0.5, 1.0]");
    c.require(high,
              "maximum at " + fmt("%.3f", f_high) + " THz in [1.75, 2.25]");
  });

  // 3. Thermal enhancement: 300 K / vacuum peak-peak ratio within 30 % of
  //    11.7, and the 45 K peak-peak within 30 % of 0.14 V^2/m^2.
  criterion(3, "thermal peak-peak ratios", 10.0, [](Check& c) {
    const double pp4 = peak_peak(scene_trace(scene_from(load("4k.ini"))));
    const double pp300 = peak_peak(scene_trace(scene_from(load("300k.ini"))));
    const double pp45 = peak_peak(scene_trace(scene_from(load("45k.ini"))));
    const double ratio = pp300 / pp4;
    c.require(std::abs(ratio / 11.7 - 1.0) < 0.30,
              "300K/vacuum ratio " + fmt("%.3f", ratio) + " vs 11.7 +/- 30%");
    c.require(std::abs(pp45 / 0.14 - 1.0) < 0.30,
              "45K peak-peak " + fmt("%.4f", pp45) + " vs 0.14 +/- 30%");
  });

  // 4. Lateral coherence: the peak-peak signal falls to 1/e of its on-axis
  //    value near 410 um (300 K) and 375 um (vacuum), both +/- 25 %.
  criterion(4, "1/e lateral coherence lengths", 30.0, [](Check& c) {
    const Scene s = scene_from(load("spatial.ini"));
    auto one_over_e_um = [&](const ThermalState& state) {
      std::vector<double> pp;
      for (double dx : s.cfg.delta_x_list_m)
        pp.push_back(peak_peak(g1_spatial(s.grid, state, s.resp, s.params, dx,
                                          s.taus, s.cfg.k_cal)));
      const double target = pp.front() / std::exp(1.0);
      for (std::size_t i = 1; i < pp.size(); ++i) {
        if (pp[i] > target) continue;
        const double x0 = s.cfg.delta_x_list_m[i - 1];
        const double x1 = s.cfg.delta_x_list_m[i];
        const double frac = (pp[i - 1] - target) / (pp[i - 1] - pp[i]);
        return (x0 + frac * (x1 - x0)) * 1e6;
      }
      return 0.0;
    };
    ThermalState hot;
    hot.kind = ThermalState::Kind::blackbody;
    hot.temperature_k = 300.0;
    const double len_hot = one_over_e_um(hot);
    const double len_vac = one_over_e_um(ThermalState{});
    c.require(std::abs(len_hot / 410.0 - 1.0) < 0.25,
              "300K 1/e length " + fmt("%.1f", len_hot) +
                  " um vs 410 +/- 25%");
    c.require(std::abs(len_vac / 375.0 - 1.0) < 0.25,
              "vacuum 1/e length " + fmt("%.1f", len_vac) +
                  " um vs 375 +/- 25%");
  });

  // 5. Photon-number extraction from a 45 K / vacuum spectrum pair matches
  //    the Bose-Einstein occupation to 1 % on every valid bin.
  criterion(5, "45 K photon-number round trip", 5.0, [](Check& c) {
    const Scene hot = scene_from(load("45k.ini"));
    const Scene cold = scene_from(load("4k.ini"));
    const PhotonExtraction ext = extract_photon_number(
        power_spectrum(scene_trace(hot)), power_spectrum(scene_trace(cold)),
        hot.cfg.extraction_floor_rel);
    std::size_t n_valid = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < ext.omega.size(); ++i) {
      if (!ext.valid[i]) continue;
      ++n_valid;
      const double expected = bose_einstein(ext.omega[i], 45.0);
      worst = std::max(worst, std::abs(ext.n_mean[i] / expected - 1.0));
    }
    c.require(n_valid == hot.grid.size(),
              fmt("%.0f", double(n_valid)) + " in-band bins valid of " +
                  fmt("%.0f", double(hot.grid.size())));
    c.require(worst < 1e-2,
              "worst relative error " + fmt("%.2e", worst) + " < 1e-2");
  });

  // 6. Monte-Carlo noise battery over 100 seeds: drift immunity, unbiased
  //    demodulated estimator, 1/sqrt(n) standard error, Allan slope -1/2.
  criterion(6, "noise Monte-Carlo battery (100 seeds)", 60.0, [](Check& c) {
    const double true_corr = 6.2e-2;
    const double sigma = 10.0;
    const std::size_t n_small = 16384;
    const double f_rep = 8e7;

    double sum_shift = 0.0, sum_stderr = 0.0, sum_ratio = 0.0;
    double sum_slope = 0.0, grand = 0.0;
    int within3 = 0;
    std::vector<double> gates;
    for (std::size_t m = 2; m <= 2048; m *= 2)
      gates.push_back(double(m) / (f_rep / 2.0));

    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      NoiseModel clean_noise{sigma, 0.0, 0.0, seed};
      NoiseModel drifty_noise{sigma, 100.0 * sigma, 1e3, seed};
      const auto clean =
          synthesize_pulse_train(true_corr, clean_noise, n_small, f_rep, 0);
      const auto drifty =
          synthesize_pulse_train(true_corr, drifty_noise, n_small, f_rep, 0);
      const auto big = synthesize_pulse_train(true_corr, clean_noise,
                                              4 * n_small, f_rep, 1);

      const auto est = estimate_correlation(clean);
      const auto est_drift = estimate_correlation(drifty);
      const auto est_big = estimate_correlation(big);

      sum_shift += std::abs(est_drift.mean - est.mean);
      sum_stderr += est.stderr_;
      grand += est.mean;
      if (std::abs(est.mean - true_corr) <= 3.0 * est.stderr_) ++within3;
      sum_ratio += est.stderr_ / est_big.stderr_;
      sum_slope += allan_log_slope(
          allan_deviation(pair_products(clean), f_rep / 2.0, gates));
    }
    const double mean_shift = sum_shift / 100.0;
    const double mean_stderr = sum_stderr / 100.0;
    c.require(mean_shift < mean_stderr,
              "100x drift shifts estimate by " + fmt("%.2e", mean_shift) +
                  " < stderr " + fmt("%.2e", mean_stderr));
    c.require(within3 >= 97, fmt("%.0f", double(within3)) +
                                 "/100 estimates within 3 stderr of truth");
    c.require(std::abs(grand / 100.0 / true_corr - 1.0) <
                  3.0 * mean_stderr / std::sqrt(100.0) / true_corr,
              "grand mean " + fmt("%.4e", grand / 100.0) + " unbiased");
    const double mean_ratio = sum_ratio / 100.0;
    c.require(std::abs(mean_ratio / 2.0 - 1.0) < 0.05,
              "stderr(n)/stderr(4n) = " + fmt("%.3f", mean_ratio) +
                  " vs 2 +/- 5%");
    const double mean_slope = sum_slope / 100.0;
    c.require(std::abs(mean_slope + 0.5) < 0.05,
              "mean Allan log-slope " + fmt("%.3f", mean_slope) +
                  " vs -0.5 +/- 0.05");
  });

  // 7. Numerical invariants: exact even symmetry, linearity in the mode
  //    occupation, closed-form phase matching vs quadrature, grid-refinement
  //    convergence, spectrum round trip.
  criterion(7, "numerical invariants", 0.0, [](Check& c) {
    const Scene s = scene_from(load("4k.ini"));
    const CorrelationTrace trace = scene_trace(s);
    const std::size_t center = trace.value.size() / 2;

    bool even = true;
    for (std::size_t j = 1; j <= center; ++j)
      even = even && trace.value[center - j] == trace.value[center + j];
    c.require(even, "even symmetry is bitwise");

    ThermalState a, b, ab;
    a.kind = b.kind = ab.kind = ThermalState::Kind::custom;
    for (double w : s.grid.omega) {
      a.custom_nbar.push_back(bose_einstein(w, 300.0));
      b.custom_nbar.push_back(bose_einstein(w, 45.0));
      ab.custom_nbar.push_back(a.custom_nbar.back() + b.custom_nbar.back());
    }
    const auto ga = g1_temporal(s.grid, a, s.resp, s.taus, s.cfg.k_cal);
    const auto gb = g1_temporal(s.grid, b, s.resp, s.taus, s.cfg.k_cal);
    const auto gv =
        g1_temporal(s.grid, ThermalState{}, s.resp, s.taus, s.cfg.k_cal);
    const auto gab = g1_temporal(s.grid, ab, s.resp, s.taus, s.cfg.k_cal);
    double lin_err = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < gab.value.size(); ++j) {
      lin_err = std::max(lin_err, std::abs(ga.value[j] + gb.value[j] -
                                           gv.value[j] - gab.value[j]));
      scale = std::max(scale, std::abs(gab.value[j]));
    }
    c.require(lin_err / scale < 1e-12,
              "occupation linearity " + fmt("%.2e", lin_err / scale) +
                  " < 1e-12");

    GaussianStream draws(20260814, 3);
    double pm_err = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double omega = 2.0 * k_pi * (0.1e12 + 4.3e12 * draws.uniform());
      const double t_k = 4.0 + 296.0 * draws.uniform();
      DispersionModel model = s.model;
      model.temperature_t_crystal = t_k;
      const std::complex<double> n = thz_refractive_index(model, omega);
      const double dk =
          omega * (n.real() - s.params.group_index_nir_ng) / k_c0;
      const double alpha = 2.0 * omega * n.imag() / k_c0;
      const std::complex<double> closed =
          phase_match_factor(dk, alpha, s.params.length_l);
      const std::complex<double> ref =
          quadrature_pm(dk, alpha, s.params.length_l, 2000);
      pm_err = std::max(pm_err, std::abs(closed - ref));
    }
    c.require(pm_err < 1e-6,
              "phase matching vs quadrature " + fmt("%.2e", pm_err) +
                  " < 1e-6");

    auto refined_peak = [&](double step, std::size_t n_half) {
      const FrequencyGrid grid = fft_aligned_grid(
          step, n_half, 2.0 * k_pi * s.cfg.omega_min_hz,
          2.0 * k_pi * s.cfg.omega_max_hz, s.params.epsilon_r,
          s.params.probe_waist_w0);
      const Responsivity resp = responsivity(s.model, s.params, grid);
      const auto g = g1_temporal(grid, ThermalState{}, resp,
                                 symmetric_taus(step, n_half), s.cfg.k_cal);
      return g.value[g.value.size() / 2];
    };
    const double coarse = refined_peak(10e-15, 2000);
    const double fine = refined_peak(5e-15, 8000);
    c.require(std::abs(fine / coarse - 1.0) < 1e-3,
              "refinement shift " + fmt("%.2e", std::abs(fine / coarse - 1.0)) +
                  " < 1e-3");

    const Spectrum spec = power_spectrum(trace);
    const std::vector<double> back = inverse_power_spectrum(spec, trace.tau);
    double rt_err = 0.0;
    for (std::size_t j = 0; j < back.size(); ++j)
      rt_err = std::max(rt_err, std::abs(back[j] - trace.value[j]));
    c.require(rt_err / std::abs(trace.value[center]) < 1e-9,
              "spectrum round trip " +
                  fmt("%.2e", rt_err / std::abs(trace.value[center])) +
                  " < 1e-9");
  });

  std::printf("%d of 7 criteria passed\n", 7 - g_failed);
  return g_failed;
}
