#pragma once

#include <cstddef>
#include <vector>

#include "specsense/spectral.hpp"

namespace specsense {

/// Dyadic-scale edge detection over a PSD. The analyzing wavelet is the
/// first derivative of a gaussian; at scale index j it is dilated by
/// 2^j, sampled on +-4 standard deviations of bins and normalized to
/// unit L1 mass.
struct WaveletConfig {
  std::size_t n_scales = 3;              // J, product runs over j = 1..J
  double edge_threshold_fraction = 0.3;  // relative to max |product|
  double smoothing_sigma_bins = 1.0;     // gaussian std at unit scale

  void validate() const;
};

struct Edge {
  double frequency_hz = 0.0;
  double magnitude = 0.0;  // |multiscale product| at the edge bin
};

/// Edges sorted by strictly increasing frequency, all in [0, sample_rate).
struct EdgeList {
  std::vector<Edge> edges;
};

enum class Occupancy { Occupied, Vacant };

struct SubbandStatus {
  double f_start_hz = 0.0;
  double f_stop_hz = 0.0;
  Occupancy status = Occupancy::Vacant;
  double mean_psd_level = 0.0;
};

/// Ordered sub-bands tiling the analyzed band; boundaries are the edge
/// frequencies plus the two band ends.
struct OccupancyMap {
  std::vector<SubbandStatus> subbands;
};

/// Circular convolution of the PSD with the derivative-of-gaussian
/// wavelet at scale 2^scale_index. Requires bins >= 8 * 2^scale_index.
std::vector<double> wavelet_transform_psd(const PsdEstimate& psd,
                                          std::size_t scale_index,
                                          double smoothing_sigma_bins = 1.0);

/// Pointwise product of the transforms at scales j = 1..n_scales.
std::vector<double> multiscale_product(const PsdEstimate& psd,
                                       const WaveletConfig& config);

/// Local maxima of |product| above edge_threshold_fraction * max.
/// Maxima closer than one base-scale wavelet support are merged,
/// keeping the larger magnitude.
EdgeList detect_edges(const std::vector<double>& product, const PsdEstimate& psd,
                      const WaveletConfig& config);

/// Partition the band at the edge frequencies and mark each sub-band
/// Occupied iff its mean PSD level exceeds noise_variance * occupancy_factor.
OccupancyMap classify_subbands(const EdgeList& edges, const PsdEstimate& psd,
                               double noise_variance, double occupancy_factor = 2.0);

}  // namespace specsense
