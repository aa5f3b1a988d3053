#include "specsense/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specsense/spectral.hpp"

namespace specsense {

void DetectorConfig::validate() const {
  if (n_samples == 0) throw std::invalid_argument("DetectorConfig: n_samples must be >= 1");
  if (!(noise_variance > 0.0))
    throw std::invalid_argument("DetectorConfig: noise_variance must be positive");
  if (!(target_pfa > 0.0 && target_pfa < 1.0))
    throw std::invalid_argument("DetectorConfig: target_pfa must be in (0, 1)");
  if (band && !(band->f_lo_hz < band->f_hi_hz))
    throw std::invalid_argument("DetectorConfig: band must have f_lo < f_hi");
}

namespace {

// series expansion of P(a,x), valid for x < a + 1
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("gamma_p_series: no convergence");
}

// Lentz continued fraction for Q(a,x), valid for x >= a + 1
double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16)
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("gamma_q_contfrac: no convergence");
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_contfrac(a, x);
}

double test_statistic(const SampleBuffer& buffer, const std::optional<BandHz>& band) {
  if (buffer.samples.empty()) throw std::invalid_argument("test_statistic: empty buffer");
  if (!band) {
    double acc = 0.0;
    for (const auto& s : buffer.samples) acc += std::norm(s);
    return acc;
  }
  if (!(band->f_lo_hz >= 0.0 && band->f_lo_hz < band->f_hi_hz &&
        band->f_hi_hz <= buffer.sample_rate_hz))
    throw std::invalid_argument("test_statistic: band outside [0, sample_rate]");
  const PsdEstimate psd = periodogram(buffer);
  double acc = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < psd.bins(); ++k) {
    const double f = psd.bin_width_hz * static_cast<double>(k);
    if (f >= band->f_lo_hz && f < band->f_hi_hz) {
      acc += psd.values[k];
      ++used;
    }
  }
  if (used == 0) throw std::invalid_argument("test_statistic: band selects no bins");
  return acc;
}

std::size_t band_bin_count(std::size_t n, double sample_rate_hz, const BandHz& band) {
  const double bw = sample_rate_hz / static_cast<double>(n);
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double f = bw * static_cast<double>(k);
    if (f >= band.f_lo_hz && f < band.f_hi_hz) ++count;
  }
  return count;
}

double cfar_threshold(const DetectorConfig& config) {
  config.validate();
  const double a = static_cast<double>(config.n_samples);
  const double pfa = config.target_pfa;

  // bracket the root of Q(a, x) = pfa
  double lo = 0.0;
  double hi = a + 10.0 * std::sqrt(a) + 10.0;
  int guard = 0;
  while (gamma_q(a, hi) > pfa) {
    hi *= 2.0;
    if (++guard > 200) throw std::runtime_error("cfar_threshold: bracket expansion failed");
  }
  for (int it = 0; it < 500; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (gamma_q(a, mid) > pfa)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-10 * std::max(1.0, hi))
      return config.noise_variance * 0.5 * (lo + hi);
  }
  throw std::runtime_error("cfar_threshold: bisection did not converge");
}

namespace {

// fraction of sorted values strictly greater than lambda
double exceedance(const std::vector<double>& sorted, double lambda) {
  auto it = std::upper_bound(sorted.begin(), sorted.end(), lambda);
  return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

}  // namespace

double equal_error_threshold(const DetectorConfig& config, double snr_db, Rng& rng,
                             std::size_t trials_per_side) {
  config.validate();
  if (!std::isfinite(snr_db))
    throw std::invalid_argument("equal_error_threshold: snr_db must be finite");
  if (trials_per_side < 1000)
    throw std::invalid_argument("equal_error_threshold: too few trials");

  const std::size_t n = config.n_samples;
  const double s2 = config.noise_variance;
  const double snr = std::pow(10.0, snr_db / 10.0);
  const double amp = std::sqrt(s2 * snr);

  std::vector<double> t0(trials_per_side), t1(trials_per_side);
  Rng rng_h0 = rng.derive("eet_h0");
  Rng rng_h1 = rng.derive("eet_h1");
  for (std::size_t t = 0; t < trials_per_side; ++t) {
    Rng r0 = rng_h0.derive(t);
    t0[t] = test_statistic(gen_awgn(n, s2, r0));
    Rng r1 = rng_h1.derive(t);
    SampleBuffer sig = gen_narrowband(0.125, n, amp, 1.0, r1);
    for (auto& s : sig.samples) s += r1.cgaussian(s2);
    t1[t] = test_statistic(sig);
  }
  std::sort(t0.begin(), t0.end());
  std::sort(t1.begin(), t1.end());

  auto g = [&](double lambda) {
    // pfa - pmd, nonincreasing in lambda
    const double pfa = exceedance(t0, lambda);
    const double pmd = 1.0 - exceedance(t1, lambda);
    return pfa - pmd;
  };

  const double mu0 = static_cast<double>(n) * s2;
  const double mu1 = mu0 * (1.0 + snr);
  // initial bracket [0, mu0 + mu1]: the first midpoint is the
  // gaussian-approximation threshold (mu0 + mu1) / 2
  double lo = 0.0;
  double hi = mu0 + mu1;
  int guard = 0;
  while (g(hi) > 0.0) {
    hi *= 2.0;
    if (++guard > 100)
      throw std::runtime_error("equal_error_threshold: bracket expansion failed");
  }

  // locate both edges of the zero crossing (the empirical curves are
  // step functions, so g can sit exactly at 0 over an interval)
  const double tol = 1e-9 * std::max(1.0, hi);
  double llo = lo, lhi = hi;
  while (lhi - llo > tol) {
    const double mid = 0.5 * (llo + lhi);
    if (g(mid) > 0.0)
      llo = mid;
    else
      lhi = mid;
  }
  double rlo = lo, rhi = hi;
  while (rhi - rlo > tol) {
    const double mid = 0.5 * (rlo + rhi);
    if (g(mid) >= 0.0)
      rlo = mid;
    else
      rhi = mid;
  }
  return 0.5 * (llo + rhi);
}

DetectionDecision decide(double statistic, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("decide: threshold must be positive");
  if (statistic < 0.0) throw std::invalid_argument("decide: statistic must be >= 0");
  DetectionDecision d;
  d.statistic = statistic;
  d.threshold = threshold;
  d.hypothesis = statistic > threshold ? Hypothesis::H1_present : Hypothesis::H0_absent;
  return d;
}

}  // namespace specsense
