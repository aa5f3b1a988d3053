#include "specsense/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specsense {

void WaveletConfig::validate() const {
  if (n_scales < 1 || n_scales > 8)
    throw std::invalid_argument("WaveletConfig: n_scales must be in [1, 8]");
  if (!(edge_threshold_fraction > 0.0 && edge_threshold_fraction < 1.0))
    throw std::invalid_argument("WaveletConfig: edge_threshold_fraction must be in (0, 1)");
  if (!(smoothing_sigma_bins > 0.0))
    throw std::invalid_argument("WaveletConfig: smoothing_sigma_bins must be positive");
}

namespace {

// first derivative of a gaussian, odd support [-h, h], unit L1 mass
std::vector<double> dog_kernel(double sigma_bins) {
  const auto h = static_cast<std::ptrdiff_t>(std::ceil(4.0 * sigma_bins));
  std::vector<double> k(2 * h + 1);
  double l1 = 0.0;
  for (std::ptrdiff_t m = -h; m <= h; ++m) {
    const double v = -static_cast<double>(m) *
                     std::exp(-static_cast<double>(m * m) / (2.0 * sigma_bins * sigma_bins));
    k[m + h] = v;
    l1 += std::abs(v);
  }
  for (auto& v : k) v /= l1;
  return k;
}

std::size_t scale_of(std::size_t scale_index) {
  if (scale_index < 1 || scale_index > 8)
    throw std::invalid_argument("wavelet: scale_index must be in [1, 8]");
  return std::size_t{1} << scale_index;
}

}  // namespace

std::vector<double> wavelet_transform_psd(const PsdEstimate& psd, std::size_t scale_index,
                                          double smoothing_sigma_bins) {
  const std::size_t s = scale_of(scale_index);
  const std::size_t n = psd.bins();
  if (n < 8 * s)
    throw std::invalid_argument("wavelet_transform_psd: scale too large for bin count");
  if (!(smoothing_sigma_bins > 0.0))
    throw std::invalid_argument("wavelet_transform_psd: sigma must be positive");

  const auto kernel = dog_kernel(static_cast<double>(s) * smoothing_sigma_bins);
  const auto h = static_cast<std::ptrdiff_t>(kernel.size() / 2);
  std::vector<double> out(n, 0.0);
  const auto sn = static_cast<std::ptrdiff_t>(n);
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    double acc = 0.0;
    for (std::ptrdiff_t m = -h; m <= h; ++m) {
      std::ptrdiff_t idx = (i - m) % sn;
      if (idx < 0) idx += sn;
      acc += kernel[m + h] * psd.values[idx];
    }
    out[i] = acc;
  }
  return out;
}

std::vector<double> multiscale_product(const PsdEstimate& psd, const WaveletConfig& config) {
  config.validate();
  auto product = wavelet_transform_psd(psd, 1, config.smoothing_sigma_bins);
  for (std::size_t j = 2; j <= config.n_scales; ++j) {
    const auto wj = wavelet_transform_psd(psd, j, config.smoothing_sigma_bins);
    for (std::size_t i = 0; i < product.size(); ++i) product[i] *= wj[i];
  }
  return product;
}

EdgeList detect_edges(const std::vector<double>& product, const PsdEstimate& psd,
                      const WaveletConfig& config) {
  config.validate();
  const std::size_t n = psd.bins();
  if (product.size() != n)
    throw std::invalid_argument("detect_edges: product length must match psd bins");

  double peak = 0.0;
  for (double v : product) peak = std::max(peak, std::abs(v));
  EdgeList out;
  if (peak == 0.0) return out;

  const double threshold = config.edge_threshold_fraction * peak;
  std::vector<std::size_t> maxima;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(product[i]);
    const double left = std::abs(product[(i + n - 1) % n]);
    const double right = std::abs(product[(i + 1) % n]);
    if (a > threshold && a >= left && a > right) maxima.push_back(i);
  }

  // merge maxima within one base-scale wavelet support, keeping the
  // larger magnitude (ties keep the lower bin)
  const auto support = static_cast<std::size_t>(
      2 * static_cast<std::size_t>(std::ceil(4.0 * 2.0 * config.smoothing_sigma_bins)) + 1);
  std::stable_sort(maxima.begin(), maxima.end(), [&](std::size_t a, std::size_t b) {
    const double pa = std::abs(product[a]);
    const double pb = std::abs(product[b]);
    if (pa != pb) return pa > pb;
    return a < b;
  });
  std::vector<std::size_t> kept;
  for (std::size_t i : maxima) {
    bool clash = false;
    for (std::size_t j : kept) {
      const std::size_t d = i > j ? i - j : j - i;
      if (std::min(d, n - d) < support) {
        clash = true;
        break;
      }
    }
    if (!clash) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end());

  out.edges.reserve(kept.size());
  for (std::size_t i : kept)
    out.edges.push_back({psd.bin_width_hz * static_cast<double>(i), std::abs(product[i])});
  return out;
}

OccupancyMap classify_subbands(const EdgeList& edges, const PsdEstimate& psd,
                               double noise_variance, double occupancy_factor) {
  if (!(noise_variance > 0.0))
    throw std::invalid_argument("classify_subbands: noise_variance must be positive");
  const std::size_t n = psd.bins();

  std::vector<std::size_t> bounds = {0};
  for (const auto& e : edges.edges) {
    if (!(e.frequency_hz >= 0.0 && e.frequency_hz < psd.sample_rate_hz))
      throw std::invalid_argument("classify_subbands: edge outside the psd range");
    const auto bin = static_cast<std::size_t>(
        std::llround(e.frequency_hz / psd.bin_width_hz));
    if (bin > 0 && bin < n) bounds.push_back(bin);
  }
  bounds.push_back(n);
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  OccupancyMap map;
  for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
    const std::size_t lo = bounds[b];
    const std::size_t hi = bounds[b + 1];
    double mean = 0.0;
    for (std::size_t k = lo; k < hi; ++k) mean += psd.values[k];
    mean /= static_cast<double>(hi - lo);
    SubbandStatus s;
    s.f_start_hz = psd.bin_width_hz * static_cast<double>(lo);
    s.f_stop_hz = hi == n ? psd.sample_rate_hz : psd.bin_width_hz * static_cast<double>(hi);
    s.mean_psd_level = mean;
    s.status = mean > noise_variance * occupancy_factor ? Occupancy::Occupied
                                                        : Occupancy::Vacant;
    map.subbands.push_back(s);
  }
  return map;
}

}  // namespace specsense
