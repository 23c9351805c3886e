#ifndef OCTPLANE_RNG_HPP
#define OCTPLANE_RNG_HPP

#include <cstdint>
#include <string_view>

namespace octplane {

/// SplitMix64, the fixed generator of the project. Reports quote seeds for
/// this exact algorithm so runs reproduce across machines and builds.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n). n must be positive.
  uint64_t below(uint64_t n) { return next() % n; }

  /// Uniform integer in [lo, hi] inclusive.
  int64_t range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  bool flip() { return (next() & 1u) != 0; }
};

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

inline uint64_t mix64(uint64_t x) {
  SplitMix64 g(x);
  return g.next();
}

/// Seed for a named check: seed' = splitmix64(seed XOR fnv1a64(name)).
inline uint64_t derive_check_seed(uint64_t seed, std::string_view check_name) {
  return mix64(seed ^ fnv1a64(check_name));
}

/// Seed for sample index i within a check; independent of worker layout.
inline uint64_t derive_sample_seed(uint64_t check_seed, uint64_t index) {
  return mix64(check_seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
}

}  // namespace octplane

#endif
