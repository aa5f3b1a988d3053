#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "specsense/signals.hpp"

namespace specsense {

enum class WindowKind { Rectangular, Hann, Hamming };

struct WindowSpec {
  WindowKind kind = WindowKind::Hann;
  std::size_t length = 1024;
};

/// Window coefficients for a spec; all values in [0, 1], length >= 2.
std::vector<double> make_window(const WindowSpec& spec);

/// Power spectral density over uniform full-circle frequency bins
/// [0, sample_rate). The convention is level-based: the mean over bins
/// equals the buffer's mean power, so flat noise of variance s2 sits at
/// level s2 in every bin.
struct PsdEstimate {
  std::vector<double> values;
  double bin_width_hz = 0.0;
  double sample_rate_hz = 0.0;
  std::size_t n_segments_averaged = 0;

  std::size_t bins() const { return values.size(); }
};

/// Unnormalized forward DFT, radix-2 iterative; length must be a power
/// of two. X[k] = sum_n x[n] exp(-i 2 pi k n / N).
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x);

/// Inverse of fft (scaled by 1/N).
std::vector<std::complex<double>> inverse_fft(
    const std::vector<std::complex<double>>& x);

/// Single-segment rectangular PSD: P[k] = |X[k]|^2 / N.
PsdEstimate periodogram(const SampleBuffer& buffer);

/// Welch modified periodogram: mean of windowed-segment periodograms,
/// each normalized by segment length and window power so a flat input
/// of variance s2 has expected level s2 in every bin.
PsdEstimate welch(const SampleBuffer& buffer, const WindowSpec& window,
                  double overlap_fraction, std::size_t min_segments);

}  // namespace specsense
