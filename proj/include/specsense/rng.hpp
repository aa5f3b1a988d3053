#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace specsense {

/// Counter-based deterministic random generator.
///
/// The stream is a pure function of the 64-bit seed. Independent
/// sub-streams are derived from (state, label) without consuming the
/// parent stream, so trials can be seeded as
/// `master.derive("experiment").derive(point).derive(trial)` and run in
/// any order or degree of parallelism with identical results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Derive an independent child stream keyed by an integer label.
  [[nodiscard]] Rng derive(std::uint64_t label) const;
  /// Derive an independent child stream keyed by a string label.
  [[nodiscard]] Rng derive(std::string_view label) const;

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double uniform();

  /// Standard normal via Box-Muller.
  double gaussian();

  /// Circularly symmetric complex gaussian with E|z|^2 = variance.
  std::complex<double> cgaussian(double variance);

  std::uint64_t seed() const { return seed_; }

 private:
  Rng(std::uint64_t seed, std::uint64_t state);

  std::uint64_t seed_;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace specsense
