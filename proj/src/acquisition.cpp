#include "veo/acquisition.hpp"

#include <cmath>

#include "veo/constants.hpp"
#include "veo/errors.hpp"
#include "veo/rng.hpp"

namespace veo {

PulseTrainRecord synthesize_pulse_train(double true_corr,
                                        const NoiseModel& noise,
                                        std::size_t n_pulses, double f_rep,
                                        std::uint64_t stream) {
  if (n_pulses < 2 || n_pulses % 2 != 0)
    throw numeric_error("synthesize_pulse_train: n_pulses must be even >= 2");
  if (noise.shot_sigma < 0.0 || noise.drift_amplitude < 0.0)
    throw numeric_error("synthesize_pulse_train: negative noise amplitude");
  if (f_rep <= 0.0)
    throw numeric_error("synthesize_pulse_train: f_rep must be positive");

  GaussianStream rng(noise.seed, stream);
  PulseTrainRecord rec;
  rec.f_rep = f_rep;
  rec.ch1.resize(n_pulses);
  rec.ch2.resize(n_pulses);

  // Signal: per-pulse component shared by both channels; the THz field is
  // uncorrelated between adjacent pulses, so cov(ch1, ch2) = true_corr while
  // the pair difference keeps the full signal variance.
  const double sig_amp = std::sqrt(std::abs(true_corr));
  const double sig_sign = true_corr < 0.0 ? -1.0 : 1.0;

  // Drift: random walk with end-of-record RMS = drift_amplitude, one-pole
  // low-passed at the knee, added identically to both channels.
  const double walk_step =
      noise.drift_amplitude / std::sqrt(static_cast<double>(n_pulses));
  const double lp =
      noise.drift_knee_hz > 0.0
          ? std::exp(-2.0 * k_pi * noise.drift_knee_hz / f_rep)
          : 0.0;
  double walk = 0.0, drift = 0.0;

  for (std::size_t k = 0; k < n_pulses; ++k) {
    const double x = rng.gaussian();
    const double n1 = rng.gaussian();
    const double n2 = rng.gaussian();
    const double w = rng.gaussian();
    walk += walk_step * w;
    drift = lp * drift + (1.0 - lp) * walk;
    rec.ch1[k] = sig_sign * sig_amp * x + noise.shot_sigma * n1 + drift;
    rec.ch2[k] = sig_amp * x + noise.shot_sigma * n2 + drift;
  }
  return rec;
}

DemodulatedPair demodulate_half_rep(const PulseTrainRecord& record) {
  const std::size_t n = record.n_pulses();
  if (n < 2 || n % 2 != 0 || record.ch2.size() != n)
    throw numeric_error("demodulate_half_rep: need an even pulse count");
  DemodulatedPair out;
  out.f_pair = record.f_rep / 2.0;
  out.ch1.resize(n / 2);
  out.ch2.resize(n / 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < n / 2; ++k) {
    out.ch1[k] = (record.ch1[2 * k] - record.ch1[2 * k + 1]) * inv_sqrt2;
    out.ch2[k] = (record.ch2[2 * k] - record.ch2[2 * k + 1]) * inv_sqrt2;
  }
  return out;
}

std::vector<double> pair_products(const PulseTrainRecord& record) {
  const DemodulatedPair demod = demodulate_half_rep(record);
  std::vector<double> products(demod.ch1.size());
  for (std::size_t k = 0; k < products.size(); ++k)
    products[k] = demod.ch1[k] * demod.ch2[k];
  return products;
}

CorrelationEstimate estimate_correlation(const PulseTrainRecord& record) {
  const std::vector<double> products = pair_products(record);
  const std::size_t m = products.size();
  if (m < 2)
    throw numeric_error("estimate_correlation: need at least two pairs");
  double mean = 0.0;
  for (double p : products) mean += p;
  mean /= static_cast<double>(m);
  double var = 0.0;
  for (double p : products) var += (p - mean) * (p - mean);
  var /= static_cast<double>(m - 1);
  CorrelationEstimate est;
  est.mean = mean;
  est.stderr_ = std::sqrt(var / static_cast<double>(m));
  est.n_pairs = m;
  return est;
}

AllanCurve allan_deviation(const std::vector<double>& series, double f_sample,
                           const std::vector<double>& gate_times) {
  if (f_sample <= 0.0)
    throw numeric_error("allan_deviation: f_sample must be positive");
  const std::size_t n = series.size();
  AllanCurve curve;
  curve.gate_times = gate_times;
  curve.deviations.reserve(gate_times.size());
  double prev_gate = 0.0;
  for (double gate : gate_times) {
    if (gate <= prev_gate)
      throw numeric_error("allan_deviation: gates must be strictly increasing");
    prev_gate = gate;
    const auto m = static_cast<std::size_t>(std::llround(gate * f_sample));
    if (m < 2)
      throw numeric_error("allan_deviation: gate shorter than 2 samples");
    if (m > n / 2)
      throw numeric_error("allan_deviation: gate longer than half the series");
    const std::size_t n_bins = n / m;
    std::vector<double> bin_means(n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += series[b * m + j];
      bin_means[b] = acc / static_cast<double>(m);
    }
    double acc = 0.0;
    for (std::size_t b = 0; b + 1 < n_bins; ++b) {
      const double d = bin_means[b + 1] - bin_means[b];
      acc += d * d;
    }
    curve.deviations.push_back(
        std::sqrt(acc / (2.0 * static_cast<double>(n_bins - 1))));
  }
  return curve;
}

double allan_log_slope(const AllanCurve& curve) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < curve.gate_times.size(); ++i) {
    if (!(curve.deviations[i] > 0.0)) continue;
    const double x = std::log10(curve.gate_times[i]);
    const double y = std::log10(curve.deviations[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw numeric_error("allan_log_slope: need two positive points");
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

double integration_time_for_sigma(double shot_sigma, double target_sigma,
                                  double f_rep) {
  if (shot_sigma <= 0.0 || target_sigma <= 0.0 || f_rep <= 0.0)
    throw numeric_error("integration_time_for_sigma: inputs must be positive");
  if (target_sigma >= shot_sigma) return 2.0 / f_rep;  // a single pair
  const double ratio = shot_sigma / target_sigma;
  return ratio * ratio / (f_rep / 2.0);
}

}  // namespace veo
