#include "specsense/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <stdexcept>
#include <thread>

namespace specsense {

namespace {

constexpr double kToneFc = 0.125;  // cycles/sample; full-band energy is fc-independent
constexpr double kFs = 1.0;

double binomial_ci3(double p, std::uint64_t trials) {
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn over [0, trials) in fixed per-trial units and sums the counter
// vectors. Counts are integers, so the result is identical for any
// thread count.
std::vector<std::uint64_t> parallel_counts(
    std::uint64_t trials, unsigned threads, std::size_t n_counters,
    const std::function<void(std::uint64_t, std::vector<std::uint64_t>&)>& fn) {
  const unsigned n_chunks = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(trials, 1)));
  std::vector<std::future<std::vector<std::uint64_t>>> futures;
  futures.reserve(n_chunks);
  for (unsigned c = 0; c < n_chunks; ++c) {
    const std::uint64_t lo = trials * c / n_chunks;
    const std::uint64_t hi = trials * (c + 1) / n_chunks;
    futures.push_back(std::async(std::launch::async, [lo, hi, n_counters, &fn] {
      std::vector<std::uint64_t> local(n_counters, 0);
      for (std::uint64_t t = lo; t < hi; ++t) fn(t, local);
      return local;
    }));
  }
  std::vector<std::uint64_t> total(n_counters, 0);
  for (auto& f : futures) {
    const auto local = f.get();
    for (std::size_t i = 0; i < n_counters; ++i) total[i] += local[i];
  }
  return total;
}

// H1 statistic: unit tone with per-trial phase through the channel
double h1_statistic(std::size_t n, const ChannelSpec& channel, Rng& r) {
  SampleBuffer sig = gen_narrowband(kToneFc, n, 1.0, kFs, r);
  SampleBuffer y = apply_channel(sig, channel, r);
  return test_statistic(y);
}

}  // namespace

std::vector<PdEstimate> run_pd_vs_snr(const std::vector<double>& snr_grid_db,
                                      const DetectorConfig& detector,
                                      const ChannelSpec& channel,
                                      std::uint64_t trials_per_point, const Rng& rng,
                                      unsigned threads) {
  detector.validate();
  if (snr_grid_db.empty()) throw std::invalid_argument("run_pd_vs_snr: empty snr grid");
  if (trials_per_point < 100)
    throw std::invalid_argument("run_pd_vs_snr: need at least 100 trials per point");

  const double lambda = cfar_threshold(detector);
  const Rng base = rng.derive("pd_vs_snr");
  const std::size_t g = snr_grid_db.size();

  const auto counts = parallel_counts(
      trials_per_point, threads, g,
      [&](std::uint64_t t, std::vector<std::uint64_t>& local) {
        const Rng trial_rng = base.derive(t);
        for (std::size_t i = 0; i < g; ++i) {
          ChannelSpec ch = channel;
          ch.snr_db = snr_grid_db[i];
          ch.noise_variance = detector.noise_variance;
          Rng r = trial_rng;  // common random numbers across the grid
          if (h1_statistic(detector.n_samples, ch, r) > lambda) ++local[i];
        }
      });

  std::vector<PdEstimate> out(g);
  for (std::size_t i = 0; i < g; ++i) {
    const double pd =
        static_cast<double>(counts[i]) / static_cast<double>(trials_per_point);
    out[i] = {pd, trials_per_point, binomial_ci3(pd, trials_per_point), snr_grid_db[i],
              detector.target_pfa};
  }
  return out;
}

RocCurve run_roc(const std::vector<double>& pfa_grid, double snr_db,
                 const DetectorConfig& detector, const ChannelSpec& channel,
                 std::uint64_t trials, const Rng& rng, unsigned threads) {
  detector.validate();
  if (pfa_grid.empty()) throw std::invalid_argument("run_roc: empty pfa grid");
  for (std::size_t i = 0; i < pfa_grid.size(); ++i) {
    if (!(pfa_grid[i] > 0.0 && pfa_grid[i] < 1.0))
      throw std::invalid_argument("run_roc: pfa grid values must be in (0, 1)");
    if (i > 0 && !(pfa_grid[i] > pfa_grid[i - 1]))
      throw std::invalid_argument("run_roc: pfa grid must be strictly increasing");
  }
  if (trials < 100) throw std::invalid_argument("run_roc: need at least 100 trials");

  const std::size_t g = pfa_grid.size();
  std::vector<double> lambdas(g);
  for (std::size_t i = 0; i < g; ++i) {
    DetectorConfig c = detector;
    c.target_pfa = pfa_grid[i];
    lambdas[i] = cfar_threshold(c);
  }

  ChannelSpec ch = channel;
  ch.snr_db = snr_db;
  ch.noise_variance = detector.noise_variance;
  const Rng base = rng.derive("roc");

  // counters: [0, g) false alarms, [g, 2g) detections
  const auto counts = parallel_counts(
      trials, threads, 2 * g, [&](std::uint64_t t, std::vector<std::uint64_t>& local) {
        Rng r0 = base.derive("h0").derive(t);
        const double t0 = test_statistic(
            gen_awgn(detector.n_samples, detector.noise_variance, r0, kFs));
        Rng r1 = base.derive("h1").derive(t);
        const double t1 = h1_statistic(detector.n_samples, ch, r1);
        for (std::size_t i = 0; i < g; ++i) {
          if (t0 > lambdas[i]) ++local[i];
          if (t1 > lambdas[i]) ++local[g + i];
        }
      });

  RocCurve curve;
  curve.snr_db = snr_db;
  curve.channel = ch;
  curve.points.resize(g);
  for (std::size_t i = 0; i < g; ++i) {
    curve.points[i] = {pfa_grid[i],
                       static_cast<double>(counts[i]) / static_cast<double>(trials),
                       static_cast<double>(counts[g + i]) / static_cast<double>(trials),
                       trials};
  }
  return curve;
}

std::pair<std::vector<PdEstimate>, std::vector<PdEstimate>> run_fading_comparison(
    const DetectorConfig& detector, const std::vector<double>& snr_grid_db,
    const ChannelSpec& rayleigh_channel, std::uint64_t trials, const Rng& rng,
    unsigned threads) {
  detector.validate();
  if (snr_grid_db.empty())
    throw std::invalid_argument("run_fading_comparison: empty snr grid");
  if (trials < 100)
    throw std::invalid_argument("run_fading_comparison: need at least 100 trials");

  const double lambda = cfar_threshold(detector);
  const Rng base = rng.derive("fading_cmp");
  const std::size_t g = snr_grid_db.size();

  ChannelSpec awgn;
  awgn.noise_variance = detector.noise_variance;
  awgn.fading = Fading::None;
  awgn.taps = {{0, 1.0}};
  ChannelSpec ray = rayleigh_channel;
  ray.fading = Fading::RayleighBlock;
  ray.noise_variance = detector.noise_variance;

  // counters: [0, g) awgn detections, [g, 2g) rayleigh detections
  const auto counts = parallel_counts(
      trials, threads, 2 * g, [&](std::uint64_t t, std::vector<std::uint64_t>& local) {
        const Rng trial_rng = base.derive(t);
        for (std::size_t i = 0; i < g; ++i) {
          ChannelSpec a = awgn;
          a.snr_db = snr_grid_db[i];
          ChannelSpec b = ray;
          b.snr_db = snr_grid_db[i];
          Rng ra = trial_rng.derive("awgn");
          Rng rb = trial_rng.derive("rayleigh");
          if (h1_statistic(detector.n_samples, a, ra) > lambda) ++local[i];
          if (h1_statistic(detector.n_samples, b, rb) > lambda) ++local[g + i];
        }
      });

  auto to_estimates = [&](std::size_t offset) {
    std::vector<PdEstimate> v(g);
    for (std::size_t i = 0; i < g; ++i) {
      const double pd =
          static_cast<double>(counts[offset + i]) / static_cast<double>(trials);
      v[i] = {pd, trials, binomial_ci3(pd, trials), snr_grid_db[i], detector.target_pfa};
    }
    return v;
  };
  return {to_estimates(0), to_estimates(g)};
}

MultiscaleDemo run_multiscale_demo(const SubbandPlan& plan, std::size_t n_samples,
                                   double noise_variance, const WelchConfig& welch_cfg,
                                   const WaveletConfig& wavelet_cfg, const Rng& rng) {
  plan.validate();
  wavelet_cfg.validate();
  if (noise_variance < 0.0)
    throw std::invalid_argument("run_multiscale_demo: noise_variance must be >= 0");

  Rng r = rng.derive("multiscale_demo");
  SampleBuffer x = gen_wideband(plan, n_samples, r);
  if (noise_variance > 0.0) {
    for (auto& s : x.samples) s += r.cgaussian(noise_variance);
  }

  MultiscaleDemo demo;
  WindowSpec win{welch_cfg.window, welch_cfg.segment_length};
  demo.psd = welch(x, win, welch_cfg.overlap_fraction, welch_cfg.min_segments);
  for (std::size_t j = 1; j <= wavelet_cfg.n_scales; ++j)
    demo.scale_transforms.push_back(
        wavelet_transform_psd(demo.psd, j, wavelet_cfg.smoothing_sigma_bins));
  demo.product = multiscale_product(demo.psd, wavelet_cfg);
  return demo;
}

std::vector<CalibrationRow> run_cfar_calibration(const std::vector<std::size_t>& n_grid,
                                                 const std::vector<double>& pfa_grid,
                                                 std::uint64_t trials, double noise_variance,
                                                 const Rng& rng, unsigned threads) {
  if (n_grid.empty() || pfa_grid.empty())
    throw std::invalid_argument("run_cfar_calibration: empty grid");
  if (trials < 10000)
    throw std::invalid_argument("run_cfar_calibration: need at least 10^4 trials");
  if (!(noise_variance > 0.0))
    throw std::invalid_argument("run_cfar_calibration: noise_variance must be positive");

  const Rng base = rng.derive("cfar_cal");
  std::vector<CalibrationRow> rows;
  for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
    const std::size_t n = n_grid[ni];
    std::vector<double> lambdas(pfa_grid.size());
    for (std::size_t pi = 0; pi < pfa_grid.size(); ++pi) {
      DetectorConfig c{n, noise_variance, pfa_grid[pi], std::nullopt};
      lambdas[pi] = cfar_threshold(c);
    }
    const Rng nbase = base.derive(ni);
    const auto counts = parallel_counts(
        trials, threads, pfa_grid.size(),
        [&](std::uint64_t t, std::vector<std::uint64_t>& local) {
          Rng r = nbase.derive(t);
          const double stat = test_statistic(gen_awgn(n, noise_variance, r, kFs));
          for (std::size_t pi = 0; pi < lambdas.size(); ++pi)
            if (stat > lambdas[pi]) ++local[pi];
        });
    for (std::size_t pi = 0; pi < pfa_grid.size(); ++pi) {
      CalibrationRow row;
      row.n_samples = n;
      row.pfa_target = pfa_grid[pi];
      row.pfa_empirical = static_cast<double>(counts[pi]) / static_cast<double>(trials);
      row.ci_halfwidth = binomial_ci3(pfa_grid[pi], trials);
      row.within_ci = std::abs(row.pfa_empirical - row.pfa_target) <= row.ci_halfwidth;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace specsense
