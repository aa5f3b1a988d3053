#pragma once

#include <optional>

#include "specsense/energy.hpp"
#include "specsense/spectral.hpp"
#include "specsense/wavelet.hpp"

namespace specsense {

enum class SignalKind { Narrowband, Wideband };

struct SignalClass {
  SignalKind kind = SignalKind::Wideband;
  double occupied_bandwidth_hz = 0.0;
  double occupied_fraction = 0.0;
};

enum class SensingPath { EnergyPath, WaveletPath };

/// Welch segmentation used by the router and the wavelet path.
struct WelchConfig {
  WindowKind window = WindowKind::Hann;
  std::size_t segment_length = 1024;
  double overlap_fraction = 0.5;
  std::size_t min_segments = 4;
};

/// Narrowband-vs-wideband routing rule: a buffer is narrowband when the
/// smallest set of highest-power Welch bins holding power_fraction of
/// the total power spans at most narrowband_fraction_threshold of the
/// sampled band. Pure noise therefore routes wideband, where the
/// wavelet path reports a vacant map.
struct RouterConfig {
  double power_fraction = 0.9;
  double narrowband_fraction_threshold = 0.1;
  WelchConfig welch;
  double occupancy_factor = 2.0;

  void validate() const;
};

/// Unified result of one integrated sensing pass. Exactly one of
/// decision (energy path) / occupancy (wavelet path) is populated.
struct SensingReport {
  SignalClass signal_class;
  SensingPath path = SensingPath::WaveletPath;
  std::optional<DetectionDecision> decision;
  std::optional<OccupancyMap> occupancy;
  std::optional<BandHz> band;  // energy path: the detected occupied band
  PsdEstimate psd;
};

/// Smallest number of highest-power bins whose sum reaches
/// power_fraction of the total, as (bandwidth_hz, fraction of band).
/// An all-zero PSD reports zero bandwidth.
std::pair<double, double> estimate_occupied_bandwidth(const PsdEstimate& psd,
                                                      double power_fraction);

SignalClass classify_signal(const PsdEstimate& psd, double narrowband_fraction_threshold,
                            double power_fraction = 0.9);

/// Welch-estimate the spectrum, classify, and run the matching detector:
/// narrowband buffers get a band-restricted energy detection with a CFAR
/// threshold for the band's bin count, wideband buffers get the wavelet
/// multiscale-product occupancy scan.
SensingReport integrated_sense(const SampleBuffer& buffer, const DetectorConfig& detector,
                               const WaveletConfig& wavelet, const RouterConfig& router);

}  // namespace specsense
