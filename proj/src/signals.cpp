#include "specsense/signals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "specsense/spectral.hpp"

namespace specsense {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double SampleBuffer::power() const {
  double acc = 0.0;
  for (const auto& s : samples) acc += std::norm(s);
  return samples.empty() ? 0.0 : acc / static_cast<double>(samples.size());
}

void SubbandPlan::validate() const {
  if (bands.empty()) throw std::invalid_argument("SubbandPlan: no sub-bands");
  if (!(total_bandwidth_hz > 0.0))
    throw std::invalid_argument("SubbandPlan: total_bandwidth_hz must be positive");
  double cursor = 0.0;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const auto& b = bands[i];
    if (!(b.f_stop_hz > b.f_start_hz))
      throw std::invalid_argument("SubbandPlan: band " + std::to_string(i) +
                                  " has f_stop <= f_start");
    if (b.power_level < 0.0)
      throw std::invalid_argument("SubbandPlan: band " + std::to_string(i) +
                                  " has negative power_level");
    if (std::abs(b.f_start_hz - cursor) > 1e-9 * total_bandwidth_hz)
      throw std::invalid_argument("SubbandPlan: band " + std::to_string(i) +
                                  " does not start where the previous band stops");
    cursor = b.f_stop_hz;
  }
  if (std::abs(cursor - total_bandwidth_hz) > 1e-9 * total_bandwidth_hz)
    throw std::invalid_argument("SubbandPlan: bands do not tile [0, total_bandwidth)");
}

void ChannelSpec::validate() const {
  if (std::isnan(snr_db) || snr_db == std::numeric_limits<double>::infinity())
    throw std::invalid_argument("ChannelSpec: snr_db must be finite or -inf");
  if (!(noise_variance >= 0.0))
    throw std::invalid_argument("ChannelSpec: noise_variance must be >= 0");
  if (taps.empty()) throw std::invalid_argument("ChannelSpec: no taps");
  if (taps.front().delay_samples != 0)
    throw std::invalid_argument("ChannelSpec: first tap delay must be 0");
  double total = 0.0;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    if (i > 0 && taps[i].delay_samples <= taps[i - 1].delay_samples)
      throw std::invalid_argument("ChannelSpec: tap delays must be strictly increasing");
    if (!(taps[i].mean_power > 0.0))
      throw std::invalid_argument("ChannelSpec: tap mean_power must be positive");
    total += taps[i].mean_power;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("ChannelSpec: tap mean powers must sum to 1");
}

SampleBuffer gen_awgn(std::size_t n, double noise_variance, Rng& rng,
                      double sample_rate_hz) {
  if (n == 0) throw std::invalid_argument("gen_awgn: n must be >= 1");
  if (!(noise_variance >= 0.0))
    throw std::invalid_argument("gen_awgn: noise_variance must be >= 0");
  SampleBuffer out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.resize(n);
  for (auto& s : out.samples) s = rng.cgaussian(noise_variance);
  return out;
}

SampleBuffer gen_tone(double fc_hz, std::size_t n, double amplitude,
                      double sample_rate_hz, double phase_rad) {
  if (n == 0) throw std::invalid_argument("gen_tone: n must be >= 1");
  if (!(sample_rate_hz > 0.0))
    throw std::invalid_argument("gen_tone: sample_rate_hz must be positive");
  if (!(std::abs(fc_hz) < sample_rate_hz / 2.0))
    throw std::invalid_argument("gen_tone: fc outside the Nyquist band");
  SampleBuffer out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.resize(n);
  const double w = kTwoPi * fc_hz / sample_rate_hz;
  for (std::size_t i = 0; i < n; ++i)
    out.samples[i] = std::polar(amplitude, w * static_cast<double>(i) + phase_rad);
  return out;
}

SampleBuffer gen_narrowband(double fc_hz, std::size_t n, double amplitude,
                            double sample_rate_hz, Rng& rng) {
  return gen_tone(fc_hz, n, amplitude, sample_rate_hz, kTwoPi * rng.uniform());
}

SampleBuffer gen_wideband(const SubbandPlan& plan, std::size_t n, Rng& rng) {
  plan.validate();
  if (n < 64) throw std::invalid_argument("gen_wideband: n must be >= 64");
  if ((n & (n - 1)) != 0)
    throw std::invalid_argument("gen_wideband: n must be a power of two");

  const double fs = plan.total_bandwidth_hz;
  const double bin_hz = fs / static_cast<double>(n);
  std::vector<std::complex<double>> spectrum(n, {0.0, 0.0});
  for (const auto& band : plan.bands) {
    if (band.power_level <= 0.0) continue;
    // E|X[k]|^2 = n * power_level gives a periodogram level of power_level
    const double var = static_cast<double>(n) * band.power_level;
    for (std::size_t k = 0; k < n; ++k) {
      double f = bin_hz * static_cast<double>(k);
      if (f >= band.f_start_hz && f < band.f_stop_hz) spectrum[k] = rng.cgaussian(var);
    }
  }
  SampleBuffer out;
  out.sample_rate_hz = fs;
  out.samples = inverse_fft(spectrum);
  return out;
}

SampleBuffer apply_channel(const SampleBuffer& signal, const ChannelSpec& channel,
                           Rng& rng) {
  channel.validate();
  if (signal.samples.empty())
    throw std::invalid_argument("apply_channel: empty signal");
  const double p_in = signal.power();
  if (!(p_in > 0.0))
    throw std::invalid_argument("apply_channel: zero-power signal cannot be snr-scaled");

  std::vector<std::complex<double>> gains(channel.taps.size());
  for (std::size_t i = 0; i < channel.taps.size(); ++i) {
    if (channel.fading == Fading::RayleighBlock)
      gains[i] = rng.cgaussian(channel.taps[i].mean_power);
    else
      gains[i] = std::sqrt(channel.taps[i].mean_power);
  }

  const std::size_t n = signal.samples.size();
  SampleBuffer out;
  out.sample_rate_hz = signal.sample_rate_hz;
  out.samples.assign(n, {0.0, 0.0});
  for (std::size_t i = 0; i < gains.size(); ++i) {
    const std::size_t d = channel.taps[i].delay_samples;
    for (std::size_t m = d; m < n; ++m)
      out.samples[m] += gains[i] * signal.samples[m - d];
  }

  // noise_variance = 0 means a noiseless channel; the snr scaling then
  // uses a unit noise reference
  const double noise_ref = channel.noise_variance > 0.0 ? channel.noise_variance : 1.0;
  const double target = std::pow(10.0, channel.snr_db / 10.0) * noise_ref;
  const double c = std::sqrt(target / p_in);
  for (auto& s : out.samples) s *= c;

  if (channel.noise_variance > 0.0) {
    for (auto& s : out.samples) s += rng.cgaussian(channel.noise_variance);
  }
  return out;
}

}  // namespace specsense
