#pragma once

#include <cstdint>

#include "lipset/rational.hpp"

namespace lipset {

// Deterministic 64-bit generator (splitmix64). Distribution helpers avoid
// std::uniform_* so seeded runs are byte-identical across platforms.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

// Uniform dyadic rational lo + k/2^bits * (hi - lo), k in [0, 2^bits].
inline Rational rand_dyadic(SplitMix64& rng, const Rational& lo, const Rational& hi,
                            int bits = 12) {
  std::uint64_t cells = 1ULL << bits;
  Rational k(static_cast<long>(rng.below(cells + 1)));
  return lo + k * Rational::pow2(-bits) * (hi - lo);
}

}  // namespace lipset
