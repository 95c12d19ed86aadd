#pragma once

#include <cstdint>

namespace bpo {

// Deterministic 64-bit generator (splitmix64). Used everywhere randomness is
// needed so that results are reproducible across platforms and standard
// library versions; std::uniform_*_distribution is implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [0, n)
  uint64_t next_below(uint64_t n) {
    // modulo bias is < 2^-53 for the range sizes used here
    return n == 0 ? 0 : next_u64() % n;
  }

  // derive an independent stream, e.g. one per Monte Carlo run
  static Rng substream(uint64_t seed, uint64_t index) {
    Rng mix(seed ^ (0x2545f4914f6cdd1dULL * (index + 1)));
    mix.next_u64();
    return mix;
  }

 private:
  uint64_t state_;
};

}  // namespace bpo
