// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace cpimac {

// SplitMix64 finalizer, used as a mixing hash to derive substream seeds.
constexpr std::uint64_t split_mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for an independent substream of a base seed.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
  return split_mix64(seed ^ split_mix64(stream));
}

// Deterministic random source. Wraps std::mt19937_64 but converts raw bits to
// doubles by hand; the standard <random> distributions are
// implementation-defined, which would break bit-exact reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Standard normal N(0, 1) via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
    const double t = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  // Circularly symmetric complex Gaussian with E|z|^2 = 1: the real and
  // imaginary parts are i.i.d. N(0, 1/2).
  std::complex<double> complex_gaussian() {
    const double r = std::sqrt(-std::log(1.0 - uniform()));
    const double t = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cpimac
