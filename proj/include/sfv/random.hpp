// Deterministic random streams. The engine is std::mt19937_64 (its output
// sequence is fixed by the standard); conversions to doubles and ranges are
// done here rather than through <random> distributions, whose algorithms are
// implementation-defined.
#pragma once

#include <cstdint>
#include <random>

#include "sfv/core.hpp"

namespace sfv {

/// splitmix64 finalizer used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Stream seed for (master, purpose, index); distinct purposes give
/// unrelated streams so e.g. handshake payload draws never perturb mobility.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t purpose,
                                    std::uint64_t index = 0) {
  std::uint64_t z = mix64(master + 0x9E3779B97F4A7C15ULL);
  z = mix64(z ^ (purpose * 0xD1B54A32D192ED03ULL));
  return mix64(z ^ (index + 0x632BE59BD9B4E019ULL));
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_() >> 32); }
  std::uint8_t next_byte() { return static_cast<std::uint8_t>(engine_() >> 56); }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, bound) by rejection (bound > 0).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = 0;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  Payload payload() {
    Payload p{};
    for (auto& b : p) {
      b = next_byte();
    }
    return p;
  }

  Block block() {
    Block b{};
    for (auto& x : b) {
      x = next_byte();
    }
    return b;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sfv
