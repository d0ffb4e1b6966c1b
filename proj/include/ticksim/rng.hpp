#pragma once

#include <cstdint>

namespace ticksim {

// Counter-based pseudorandom stream built on the splitmix64 finalizer
// (Steele, Lea & Flood; the generator behind Java's SplittableRandom).
// Output i of stream `seed` is mix64(seed + (i+1)*GOLDEN), i.e. the plain
// splitmix64 sequence, but addressable by counter. Pure 64-bit integer
// arithmetic, so identical on every platform.

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// splitmix64 output at position `i` of the stream seeded by `seed`.
constexpr std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t i) {
  return mix64(seed + (i + 1) * kGoldenGamma);
}

/// Seed for batch `i` derived from `master`: two finalizer rounds over
/// (master, i). Fixed across releases; the parallel-batch contract of the
/// samplers depends on it.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i) {
  return mix64(mix64(master + kGoldenGamma) + i * kGoldenGamma);
}

/// Stateless-per-position generator: next_*() reads the stream at the
/// current counter and advances it. Copyable value type.
class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
      : seed_(seed), counter_(counter) {}

  constexpr std::uint64_t next_u64() { return splitmix64_at(seed_, counter_++); }

  /// Uniform double in [0, 1), 53 mantissa bits.
  double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform +1 or -1 from the top bit of one draw.
  int next_sign() { return (next_u64() >> 63) ? -1 : +1; }

  /// True with probability p; consumes one draw.
  bool bernoulli(double p) { return next_u01() < p; }

  constexpr std::uint64_t seed() const { return seed_; }
  constexpr std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace ticksim
