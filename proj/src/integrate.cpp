#include "specsense/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace specsense {

void RouterConfig::validate() const {
  if (!(power_fraction > 0.0 && power_fraction < 1.0))
    throw std::invalid_argument("RouterConfig: power_fraction must be in (0, 1)");
  if (!(narrowband_fraction_threshold > 0.0 && narrowband_fraction_threshold < 1.0))
    throw std::invalid_argument(
        "RouterConfig: narrowband_fraction_threshold must be in (0, 1)");
  if (!(occupancy_factor > 0.0))
    throw std::invalid_argument("RouterConfig: occupancy_factor must be positive");
  if (!(welch.overlap_fraction >= 0.0 && welch.overlap_fraction < 1.0))
    throw std::invalid_argument("RouterConfig: welch overlap must be in [0, 1)");
  if (welch.segment_length < 2)
    throw std::invalid_argument("RouterConfig: welch segment_length must be >= 2");
}

namespace {

// indices of the smallest set of highest-power bins reaching
// power_fraction of the total; empty for an all-zero psd
std::vector<std::size_t> occupied_bins(const PsdEstimate& psd, double power_fraction) {
  if (psd.values.empty()) throw std::invalid_argument("occupied bandwidth: empty psd");
  if (!(power_fraction > 0.0 && power_fraction < 1.0))
    throw std::invalid_argument("occupied bandwidth: power_fraction must be in (0, 1)");
  const double total = std::accumulate(psd.values.begin(), psd.values.end(), 0.0);
  if (!(total > 0.0)) return {};

  std::vector<std::size_t> order(psd.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return psd.values[a] > psd.values[b];
  });
  double acc = 0.0;
  std::vector<std::size_t> picked;
  for (std::size_t k : order) {
    picked.push_back(k);
    acc += psd.values[k];
    if (acc >= power_fraction * total) break;
  }
  return picked;
}

}  // namespace

std::pair<double, double> estimate_occupied_bandwidth(const PsdEstimate& psd,
                                                      double power_fraction) {
  const auto bins = occupied_bins(psd, power_fraction);
  const double fraction =
      static_cast<double>(bins.size()) / static_cast<double>(psd.bins());
  return {static_cast<double>(bins.size()) * psd.bin_width_hz, fraction};
}

SignalClass classify_signal(const PsdEstimate& psd, double narrowband_fraction_threshold,
                            double power_fraction) {
  if (!(narrowband_fraction_threshold > 0.0 && narrowband_fraction_threshold < 1.0))
    throw std::invalid_argument("classify_signal: threshold must be in (0, 1)");
  const auto [bw, fraction] = estimate_occupied_bandwidth(psd, power_fraction);
  SignalClass out;
  out.occupied_bandwidth_hz = bw;
  out.occupied_fraction = fraction;
  out.kind = fraction <= narrowband_fraction_threshold ? SignalKind::Narrowband
                                                       : SignalKind::Wideband;
  return out;
}

namespace {

[[noreturn]] void rethrow_with_stage(const char* stage, const std::exception& e) {
  throw std::runtime_error(std::string(stage) + ": " + e.what());
}

}  // namespace

SensingReport integrated_sense(const SampleBuffer& buffer, const DetectorConfig& detector,
                               const WaveletConfig& wavelet, const RouterConfig& router) {
  router.validate();
  wavelet.validate();

  SensingReport report;
  try {
    WindowSpec win{router.welch.window, router.welch.segment_length};
    report.psd = welch(buffer, win, router.welch.overlap_fraction, router.welch.min_segments);
  } catch (const std::exception& e) {
    rethrow_with_stage("welch", e);
  }

  report.signal_class = classify_signal(report.psd, router.narrowband_fraction_threshold,
                                        router.power_fraction);

  if (report.signal_class.kind == SignalKind::Narrowband) {
    report.path = SensingPath::EnergyPath;
    try {
      // band = tightest interval covering the occupied bin set; a
      // zero-power buffer (empty set) falls back to the full band
      const auto bins = occupied_bins(report.psd, router.power_fraction);
      BandHz band{0.0, buffer.sample_rate_hz};
      if (!bins.empty()) {
        const auto [lo_bin, hi_bin] = std::minmax_element(bins.begin(), bins.end());
        band = {report.psd.bin_width_hz * static_cast<double>(*lo_bin),
                report.psd.bin_width_hz * static_cast<double>(*hi_bin + 1)};
      }
      const std::size_t b =
          band_bin_count(buffer.samples.size(), buffer.sample_rate_hz, band);
      if (b == 0) throw std::runtime_error("detected band selects no periodogram bins");
      DetectorConfig band_cfg = detector;
      band_cfg.n_samples = b;
      band_cfg.band = band;
      const double lambda = cfar_threshold(band_cfg);
      const double t = test_statistic(buffer, band);
      report.decision = decide(t, lambda);
      report.band = band;
    } catch (const std::exception& e) {
      rethrow_with_stage("energy", e);
    }
  } else {
    report.path = SensingPath::WaveletPath;
    try {
      const auto product = multiscale_product(report.psd, wavelet);
      const auto edges = detect_edges(product, report.psd, wavelet);
      report.occupancy = classify_subbands(edges, report.psd, detector.noise_variance,
                                           router.occupancy_factor);
    } catch (const std::exception& e) {
      rethrow_with_stage("wavelet", e);
    }
  }
  return report;
}

}  // namespace specsense
