#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace monet {

/// SplitMix64 finaliser; a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed of the `index`-th member of the stream rooted at `master`.
/// Streams with different `domain` tags never collide for the same master.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                    std::uint64_t domain = 0) noexcept {
  return splitmix64(splitmix64(master ^ splitmix64(domain)) + index);
}

// Domain tags used by the library so that, for one master seed, tree
// generation, verification and routing draw from unrelated streams.
namespace seed_domain {
inline constexpr std::uint64_t kTree = 0x7472656500000000ull;
inline constexpr std::uint64_t kVerify = 0x7665726900000000ull;
inline constexpr std::uint64_t kRoute = 0x726f757400000000ull;
inline constexpr std::uint64_t kMonitor = 0x6d6f6e6900000000ull;
inline constexpr std::uint64_t kProbe = 0x70726f6200000000ull;
}  // namespace seed_domain

// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The distribution adapters below are written out because the
// standard library's distributions are implementation-defined, and overlay
// files must be reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Lemire's nearly-divisionless rejection.
    __uint128_t product = static_cast<__uint128_t>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<__uint128_t>(engine_()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal variate (Marsaglia polar method).
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
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace monet
