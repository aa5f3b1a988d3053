#include "specsense/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specsense {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// in-place radix-2 DIT with a per-call twiddle table
void fft_inplace(std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
  if (n == 1) return;

  // bit-reversal permutation
  for (std::size_t i = 0, j = 0; i < n; ++i) {
    if (i < j) std::swap(x[i], x[j]);
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j |= bit;
  }

  std::vector<std::complex<double>> twiddle(n / 2);
  for (std::size_t t = 0; t < n / 2; ++t)
    twiddle[t] = std::polar(1.0, -kTwoPi * static_cast<double>(t) / static_cast<double>(n));

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const auto w = twiddle[j * stride];
        const auto t = x[base + j + half] * w;
        const auto u = x[base + j];
        x[base + j] = u + t;
        x[base + j + half] = u - t;
      }
    }
  }
}

}  // namespace

std::vector<double> make_window(const WindowSpec& spec) {
  if (spec.length < 2) throw std::invalid_argument("WindowSpec: length must be >= 2");
  const std::size_t n = spec.length;
  std::vector<double> w(n, 1.0);
  switch (spec.kind) {
    case WindowKind::Rectangular:
      break;
    case WindowKind::Hann:
      for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n)));
      break;
    case WindowKind::Hamming:
      for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.54 - 0.46 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n));
      break;
  }
  return w;
}

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x) {
  auto y = x;
  fft_inplace(y);
  return y;
}

std::vector<std::complex<double>> inverse_fft(
    const std::vector<std::complex<double>>& x) {
  auto y = x;
  for (auto& v : y) v = std::conj(v);
  fft_inplace(y);
  const double inv = 1.0 / static_cast<double>(y.size());
  for (auto& v : y) v = std::conj(v) * inv;
  return y;
}

namespace {

// |FFT(w .* segment)|^2 / (L * U); shared by periodogram and welch so the
// degenerate welch case is bit-identical to the plain periodogram
void accumulate_segment_psd(const std::complex<double>* seg, const std::vector<double>& w,
                            double lu, std::vector<double>& acc,
                            std::vector<std::complex<double>>& scratch) {
  const std::size_t L = w.size();
  for (std::size_t i = 0; i < L; ++i) scratch[i] = seg[i] * w[i];
  fft_inplace(scratch);
  for (std::size_t k = 0; k < L; ++k) acc[k] += std::norm(scratch[k]) / lu;
}

}  // namespace

PsdEstimate periodogram(const SampleBuffer& buffer) {
  const std::size_t n = buffer.samples.size();
  if (!is_pow2(n))
    throw std::invalid_argument("periodogram: length must be a power of two");
  WindowSpec rect{WindowKind::Rectangular, n};
  return welch(buffer, rect, 0.0, 1);
}

PsdEstimate welch(const SampleBuffer& buffer, const WindowSpec& window,
                  double overlap_fraction, std::size_t min_segments) {
  const std::size_t n = buffer.samples.size();
  const std::size_t L = window.length;
  if (!is_pow2(L)) throw std::invalid_argument("welch: window length must be a power of two");
  if (L > n) throw std::invalid_argument("welch: window longer than buffer");
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
    throw std::invalid_argument("welch: overlap_fraction must be in [0, 1)");
  if (min_segments == 0) min_segments = 1;

  const auto w = make_window(window);
  const std::size_t hop = std::max<std::size_t>(
      1, L - static_cast<std::size_t>(std::llround(overlap_fraction * static_cast<double>(L))));
  const std::size_t n_segs = 1 + (n - L) / hop;
  if (n_segs < min_segments)
    throw std::invalid_argument("welch: buffer too short for requested segmentation");

  double u = 0.0;
  for (double v : w) u += v * v;
  u /= static_cast<double>(L);
  const double lu = static_cast<double>(L) * u;

  PsdEstimate psd;
  psd.values.assign(L, 0.0);
  psd.sample_rate_hz = buffer.sample_rate_hz;
  psd.bin_width_hz = buffer.sample_rate_hz / static_cast<double>(L);
  psd.n_segments_averaged = n_segs;

  std::vector<std::complex<double>> scratch(L);
  for (std::size_t s = 0; s < n_segs; ++s)
    accumulate_segment_psd(buffer.samples.data() + s * hop, w, lu, psd.values, scratch);
  const double inv = 1.0 / static_cast<double>(n_segs);
  for (auto& v : psd.values) v *= inv;
  return psd;
}

}  // namespace specsense
