#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hyperis {

// 64-bit master seed with deterministic substream derivation.  Identical
// (master, index) pairs always yield identical streams, so Monte Carlo
// trials can be addressed by logical index regardless of scheduling.
struct Seed {
  std::uint64_t master = 0;

  // SplitMix64 finalizer, used as the mixing function for substreams.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // FNV-1a, for deriving substreams from experiment labels.
  static constexpr std::uint64_t hash_label(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : label) {
      h ^= static_cast<unsigned char>(ch);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  constexpr Seed stream(std::uint64_t index) const {
    return Seed{mix(master ^ mix(index + 1))};
  }

  constexpr Seed stream(std::string_view label) const {
    return stream(hash_label(label));
  }
};

// Deterministic RNG.  mt19937_64 seeded from a single value is fully
// specified by the standard; uniform doubles are produced directly from
// the raw 64-bit output so results do not depend on the C++ library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(Seed s) : engine_(s.master) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53 bits of precision.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

  // Index in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // rejection-free modulo bias is negligible for desk-scale n, but stay exact:
    std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Poisson(mean): sequential inversion for mean <= 30, Hormann's PTRS
  // transformed rejection above.
  long poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace hyperis
