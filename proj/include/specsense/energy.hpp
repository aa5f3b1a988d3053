#pragma once

#include <optional>

#include "specsense/rng.hpp"
#include "specsense/signals.hpp"

namespace specsense {

enum class Hypothesis { H0_absent, H1_present };

/// Frequency interval in [0, sample_rate), full-circle convention.
struct BandHz {
  double f_lo_hz = 0.0;
  double f_hi_hz = 0.0;
};

struct DetectorConfig {
  std::size_t n_samples = 1024;   // gamma shape of the H0 statistic
  double noise_variance = 1.0;    // assumed known
  double target_pfa = 0.1;
  std::optional<BandHz> band;

  void validate() const;
};

struct DetectionDecision {
  Hypothesis hypothesis = Hypothesis::H0_absent;
  double statistic = 0.0;
  double threshold = 0.0;
};

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double gamma_q(double a, double x);

/// Received energy. Without a band: T = sum |x[n]|^2. With a band:
/// the sum of periodogram bins inside [f_lo, f_hi), which equals the
/// time-domain statistic when the band spans the full circle.
double test_statistic(const SampleBuffer& buffer,
                      const std::optional<BandHz>& band = std::nullopt);

/// Number of periodogram bins of an n-point buffer falling in the band.
std::size_t band_bin_count(std::size_t n, double sample_rate_hz, const BandHz& band);

/// CFAR threshold: the lambda with P(T > lambda | H0) = target_pfa under
/// the exact H0 law T / sigma^2 ~ Gamma(n_samples, 1), found by bisecting
/// the regularized upper incomplete gamma to 1e-10 relative width.
double cfar_threshold(const DetectorConfig& config);

/// Threshold equalizing the Monte Carlo false-alarm and missed-detection
/// estimates, found by bisection over lambda with at least 10^5 trials
/// per hypothesis. The gaussian-approximation midpoint
/// (mu0 + mu1) / 2 seeds the initial bracket.
double equal_error_threshold(const DetectorConfig& config, double snr_db, Rng& rng,
                             std::size_t trials_per_side = 100000);

/// H1 iff statistic > threshold; ties decide H0.
DetectionDecision decide(double statistic, double threshold);

}  // namespace specsense
