#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "specsense/rng.hpp"

namespace specsense {

/// Complex baseband time series with its sample rate.
struct SampleBuffer {
  std::vector<std::complex<double>> samples;
  double sample_rate_hz = 1.0;

  std::size_t size() const { return samples.size(); }

  /// Mean power (1/N) * sum |x[n]|^2.
  double power() const;
};

/// One frequency sub-band of a wideband occupancy plan.
struct Subband {
  double f_start_hz = 0.0;
  double f_stop_hz = 0.0;
  double power_level = 0.0;  // PSD level inside the band; 0 = spectrum hole
};

/// Consecutive, non-overlapping sub-bands tiling [0, total_bandwidth_hz).
struct SubbandPlan {
  std::vector<Subband> bands;
  double total_bandwidth_hz = 1.0;

  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

enum class Fading { None, RayleighBlock };

/// A single multipath tap: sample delay and mean power.
struct ChannelTap {
  std::size_t delay_samples = 0;
  double mean_power = 1.0;
};

/// Channel under which sensing is evaluated: multipath + AWGN.
///
/// snr_db sets the ratio of mean received signal power to noise power,
/// measured over the full sampled band. With noise_variance = 0 the
/// noise reference for the scaling is taken as unit power and no noise
/// is added. -inf is accepted and zeroes the signal.
struct ChannelSpec {
  double snr_db = 0.0;
  double noise_variance = 1.0;
  std::vector<ChannelTap> taps = {{0, 1.0}};
  Fading fading = Fading::None;

  void validate() const;
};

/// n circularly symmetric complex gaussian samples with per-sample
/// variance noise_variance, split equally over real and imaginary parts.
SampleBuffer gen_awgn(std::size_t n, double noise_variance, Rng& rng,
                      double sample_rate_hz = 1.0);

/// Deterministic complex exponential with explicit initial phase.
SampleBuffer gen_tone(double fc_hz, std::size_t n, double amplitude,
                      double sample_rate_hz, double phase_rad);

/// Complex exponential with phase drawn uniformly on [0, 2*pi).
SampleBuffer gen_narrowband(double fc_hz, std::size_t n, double amplitude,
                            double sample_rate_hz, Rng& rng);

/// Sum of band-limited gaussian processes, one per occupied sub-band,
/// synthesized by brick-wall masking white gaussian spectra. The
/// expected PSD is piecewise constant at the plan's power levels.
/// n must be a power of two (radix-2 synthesis), n >= 64.
SampleBuffer gen_wideband(const SubbandPlan& plan, std::size_t n, Rng& rng);

/// Convolve with the tap gains (block fading: gains redrawn per call),
/// scale so mean received signal power hits the snr target, then add
/// AWGN. Output length equals input length.
SampleBuffer apply_channel(const SampleBuffer& signal, const ChannelSpec& channel,
                           Rng& rng);

}  // namespace specsense
