#pragma once

// Portable seeded random source. std::mt19937_64 is fully specified by the
// standard; the conversions to uniform and normal deviates are done here
// rather than with <random> distributions, whose output is
// implementation-defined.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace qcorr {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal pair via Box-Muller.
  std::pair<double, double> normal_pair() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  double normal() { return normal_pair().first; }

  // Independent standard-normal real and imaginary parts.
  std::complex<double> complex_normal() {
    auto [re, im] = normal_pair();
    return {re, im};
  }

  // Exponential(1), used for Dirichlet-uniform weights.
  double exponential() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return -std::log(u);
  }

 private:
  std::mt19937_64 engine_;
};

// Seed for an independent sub-stream (restart, case, channel...). SplitMix64
// finalizer so neighbouring indices give unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qcorr
