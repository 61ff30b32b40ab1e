#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace spherepts {

// SplitMix64 finalizer. Used for seed derivation only.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Per-run seed for run `index` of a Monte Carlo batch started from `master`:
// mix64(master ^ mix64(index + 1)).
constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index + 1));
}

// Portable random stream: std::mt19937_64 (its output sequence is fixed by the
// standard) with hand-written conversions, since the standard distributions
// differ between library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal by the Marsaglia polar method. The second variate of each
  // accepted pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  // Uniform point on the unit sphere in R^{out.size()} (normalized normals).
  void unit_vector(std::span<double> out) {
    double s;
    do {
      s = 0.0;
      for (double& c : out) {
        c = normal();
        s += c * c;
      }
    } while (s == 0.0);
    const double inv = 1.0 / std::sqrt(s);
    for (double& c : out) c *= inv;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace spherepts
