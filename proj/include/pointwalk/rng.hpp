#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace pointwalk {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Combines a seed with a stream id into a new seed.
inline uint64_t mix_seed(uint64_t seed, uint64_t id) {
  return splitmix64(seed ^ (id * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL));
}

// Stream ids for the documented sub-stream derivation. Every piece of
// randomness in the pipeline descends from one root seed through these.
namespace stream {
constexpr uint64_t init = 1;          // parameter initialization
constexpr uint64_t shape = 2;         // synthetic shape sampling
constexpr uint64_t train_sample = 3;  // which cloud goes in a batch slot
constexpr uint64_t train_walk = 4;    // walk generated for a batch slot
constexpr uint64_t infer_walk = 5;    // walks generated at inference
constexpr uint64_t walk_ordinal = 6;  // per-walk stream inside generate_walks
constexpr uint64_t strategy = 7;      // combined-strategy coin flips
constexpr uint64_t noise = 8;         // point jitter
}  // namespace stream

// Seeded random stream. Draws come from std::mt19937_64 (bit-exact across
// platforms by the standard); the int/real mappings are our own so results
// do not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  uint64_t seed() const { return seed_; }

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound), unbiased via rejection.
  uint64_t uniform_index(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_index: bound is 0");
    const uint64_t rem = (std::numeric_limits<uint64_t>::max() % bound + 1) % bound;
    const uint64_t cut = 0 - rem;  // 2^64 - (2^64 mod bound), wrapped
    for (;;) {
      uint64_t x = engine_();
      if (rem == 0 || x < cut) return x % bound;
    }
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform_real() { return double(engine_() >> 11) * 0x1.0p-53; }

  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform_real();
  }

  bool bernoulli(double p) { return uniform_real() < p; }

  // Box-Muller, cosine branch only; consumes two uniforms per call.
  double normal() {
    double u1 = uniform_real();
    while (u1 <= 0.0) u1 = uniform_real();
    const double u2 = uniform_real();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  // Derived stream, a pure function of this stream's seed and the ids.
  // Independent of how many draws have been made.
  Rng substream(uint64_t a, uint64_t b = 0) const {
    return Rng(mix_seed(mix_seed(seed_, a), b));
  }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace pointwalk
