#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "specsense/integrate.hpp"

namespace specsense {

/// One Monte Carlo detection-probability point with a 3-sigma binomial
/// confidence halfwidth.
struct PdEstimate {
  double pd_hat = 0.0;
  std::uint64_t trials = 0;
  double ci_halfwidth = 0.0;
  double snr_db = 0.0;
  double target_pfa = 0.0;
};

struct RocPoint {
  double pfa_target = 0.0;
  double pfa_empirical = 0.0;
  double pd_hat = 0.0;
  std::uint64_t trials = 0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // sorted by pfa_target
  double snr_db = 0.0;
  ChannelSpec channel;
};

/// Record of one sensing trial, reproducible from (master seed, index).
struct TrialResult {
  std::uint64_t trial_index = 0;
  Hypothesis truth = Hypothesis::H0_absent;
  std::variant<DetectionDecision, SensingReport> report;
  std::uint64_t seed = 0;
};

struct CalibrationRow {
  std::size_t n_samples = 0;
  double pfa_target = 0.0;
  double pfa_empirical = 0.0;
  double ci_halfwidth = 0.0;  // 3 sigma around the target
  bool within_ci = false;
};

/// One realization's PSD, the per-scale wavelet transforms, and their
/// pointwise product, aligned per frequency bin.
struct MultiscaleDemo {
  PsdEstimate psd;
  std::vector<std::vector<double>> scale_transforms;  // j = 1..J
  std::vector<double> product;
};

/// Detection probability versus SNR on an H1 tone through the channel,
/// CFAR threshold fixed by the detector config. Per-trial seeds depend
/// only on (rng, trial index), so all grid points share random numbers.
std::vector<PdEstimate> run_pd_vs_snr(const std::vector<double>& snr_grid_db,
                                      const DetectorConfig& detector,
                                      const ChannelSpec& channel,
                                      std::uint64_t trials_per_point, const Rng& rng,
                                      unsigned threads = 0);

/// (Pfa, Pd) per target on a strictly increasing pfa grid. Each trial's
/// H0/H1 statistics are computed once and compared against every
/// threshold, so pd is nondecreasing along the grid by construction.
RocCurve run_roc(const std::vector<double>& pfa_grid, double snr_db,
                 const DetectorConfig& detector, const ChannelSpec& channel,
                 std::uint64_t trials, const Rng& rng, unsigned threads = 0);

/// Identical Pd sweeps under an AWGN-only channel and the given
/// multipath Rayleigh channel, with common per-trial seeds.
std::pair<std::vector<PdEstimate>, std::vector<PdEstimate>> run_fading_comparison(
    const DetectorConfig& detector, const std::vector<double>& snr_grid_db,
    const ChannelSpec& rayleigh_channel, std::uint64_t trials, const Rng& rng,
    unsigned threads = 0);

/// One wideband realization through AWGN of the given variance,
/// Welch-estimated and decomposed per scale.
MultiscaleDemo run_multiscale_demo(const SubbandPlan& plan, std::size_t n_samples,
                                   double noise_variance, const WelchConfig& welch_cfg,
                                   const WaveletConfig& wavelet_cfg, const Rng& rng);

/// H0-only false-alarm sweep over (N, pfa) grids. Rows falling outside
/// their 3-sigma band are flagged, not raised.
std::vector<CalibrationRow> run_cfar_calibration(const std::vector<std::size_t>& n_grid,
                                                 const std::vector<double>& pfa_grid,
                                                 std::uint64_t trials, double noise_variance,
                                                 const Rng& rng, unsigned threads = 0);

}  // namespace specsense
