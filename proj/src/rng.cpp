#include "specsense/rng.hpp"

#include <cmath>
#include <numbers>

namespace specsense {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer; also used to hash labels into child seeds
constexpr std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), state_(mix(seed + kGolden)) {}

Rng::Rng(std::uint64_t seed, std::uint64_t state) : seed_(seed), state_(state) {}

Rng Rng::derive(std::uint64_t label) const {
  std::uint64_t child = mix(state_ ^ mix(label + kGolden));
  return Rng(child, mix(child + kGolden));
}

Rng Rng::derive(std::string_view label) const {
  // FNV-1a over the label bytes, then fold into the state
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return derive(h);
}

std::uint64_t Rng::next_u64() {
  state_ += kGolden;
  return mix(state_);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

std::complex<double> Rng::cgaussian(double variance) {
  double s = std::sqrt(variance * 0.5);
  double re = gaussian();
  double im = gaussian();
  return {s * re, s * im};
}

}  // namespace specsense
