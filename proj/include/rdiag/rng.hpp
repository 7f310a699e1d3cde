#pragma once

// Deterministic random number generation for the simulation lab.  All
// sampling goes through explicit uniforms drawn from a mt19937_64 engine so
// that streams are reproducible across platforms and standard library
// versions (std::normal_distribution is not portable across vendors).

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace rdiag {

// SplitMix64 step; used to decorrelate seed streams derived from a base seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Stable per-stream seed: repeated calls with the same (base, stream) always
// produce the same value, and distinct streams are decorrelated.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t s = base ^ (0xd1b54a32d192ed03ull * (stream + 1));
  std::uint64_t out = splitmix64(s);
  out ^= splitmix64(s);
  return out;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1); never returns an exact zero (safe under log).
  double uniform_pos() {
    double u;
    do {
      u = uniform();
    } while (u <= 0.0);
    return u;
  }

  // Standard normal via Box-Muller over explicit uniforms.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Complex normal with independent N(0, sigma^2) real and imaginary parts.
  std::complex<double> cnormal(double sigma = 1.0) {
    const double re = sigma * normal();
    const double im = sigma * normal();
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rdiag
