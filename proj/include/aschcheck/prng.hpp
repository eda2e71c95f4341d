#pragma once

#include <cstdint>

namespace asch {

/// SplitMix64 generator. All randomized routines take a Prng& so runs are
/// reproducible from a single 64-bit seed; there is no global generator
/// state anywhere in the library.
class Prng {
 public:
  explicit Prng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform-ish draw in [0, n); n must be positive.
  uint64_t below(uint64_t n) { return next() % n; }

  /// Derive an independent stream for a sub-task, keyed by a small tag.
  Prng fork(uint64_t tag) {
    return Prng(next() ^ (0xA24BAED4963EE407ull * (tag + 1)));
  }

 private:
  uint64_t state_;
};

}  // namespace asch
