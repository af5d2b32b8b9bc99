#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace veo {

// Per-pulse noise description of the two balanced detection channels.
// shot_sigma is the per-pulse standard deviation of each channel (single-
// field units); the drift is a shared random walk low-passed at
// drift_knee_hz whose end-of-record RMS equals drift_amplitude.
struct NoiseModel {
  double shot_sigma = 0.0;
  double drift_amplitude = 0.0;
  double drift_knee_hz = 0.0;
  std::uint64_t seed = 0;
};

// Per-pulse sample sequences of both channels; pulse k occurs at k/f_rep.
struct PulseTrainRecord {
  double f_rep = 8e7;  // Hz
  std::vector<double> ch1, ch2;

  std::size_t n_pulses() const { return ch1.size(); }
};

// Demodulated channel pair at half the repetition rate.
struct DemodulatedPair {
  double f_pair = 4e7;  // Hz
  std::vector<double> ch1, ch2;
};

struct CorrelationEstimate {
  double mean = 0.0;       // V^2/m^2
  double stderr_ = 0.0;    // standard error of the mean
  std::size_t n_pairs = 0;
};

struct AllanCurve {
  std::vector<double> gate_times;  // s, strictly increasing
  std::vector<double> deviations;  // series units
};

// Draws n_pulses samples per channel: a per-pulse signal component shared by
// both channels with ensemble cross-covariance true_corr, independent
// Gaussian shot noise per channel, and the shared drift. Bit-deterministic
// under (noise.seed, stream); distinct streams are independent, so records
// for different delays may be synthesized concurrently. Odd n_pulses is
// rejected (demodulation pairs adjacent pulses).
PulseTrainRecord synthesize_pulse_train(double true_corr,
                                        const NoiseModel& noise,
                                        std::size_t n_pulses,
                                        double f_rep = 8e7,
                                        std::uint64_t stream = 0);

// out[k] = (ch[2k] - ch[2k+1])/sqrt(2) per channel. The 1/sqrt(2) keeps the
// white-noise variance invariant and makes the demodulated product an
// unbiased correlation estimator when the signal is uncorrelated between
// adjacent pulses.
DemodulatedPair demodulate_half_rep(const PulseTrainRecord& record);

// Per-pair products of the demodulated channels (the averaged series).
std::vector<double> pair_products(const PulseTrainRecord& record);

// Sample mean and standard error of the demodulated channel products.
CorrelationEstimate estimate_correlation(const PulseTrainRecord& record);

// Standard non-overlapping two-sample Allan deviation of the series sampled
// at f_sample, evaluated at each gate time. Every gate must contain at least
// 2 samples and at most half the series.
AllanCurve allan_deviation(const std::vector<double>& series, double f_sample,
                           const std::vector<double>& gate_times);

// Least-squares slope of log10(adev) vs log10(gate); white noise gives -1/2,
// random-walk drift +1/2.
double allan_log_slope(const AllanCurve& curve);

// Averaging time needed to push the standard error of a series with
// per-sample deviation shot_sigma down to target_sigma, at the demodulated
// pair rate f_rep/2. A target at or above the per-sample sigma needs a
// single pair: 2/f_rep.
double integration_time_for_sigma(double shot_sigma, double target_sigma,
                                  double f_rep);

}  // namespace veo
