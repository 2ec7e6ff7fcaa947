#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-based Gaussian streams. Every draw is a pure function of
// (key, counter), so a noise field can be evaluated lazily, in any order,
// and from any thread, and always reproduces the same values. Keys are
// derived from a user seed plus stream identifiers (module tag, sample
// index, ...), which keeps substreams disjoint by construction.

namespace fraclattice::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer: invertible 64-bit mixing with full avalanche.
inline std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Derives an independent stream key from a seed and up to three stream ids.
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a,
                                std::uint64_t b = 0,
                                std::uint64_t c = 0) noexcept {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (a + 0xd6e8feb86659fd93ULL));
  h = mix64(h ^ (b + 0xa0761d6478bd642fULL));
  h = mix64(h ^ (c + 0xe7037ed1a0b428dbULL));
  return h;
}

// Random bits at position `counter` of the stream: SplitMix64 evaluated at
// state key + counter * gamma (random access into the sequential stream).
inline std::uint64_t bits_at(std::uint64_t key, std::uint64_t counter) noexcept {
  return mix64(key + counter * kGolden);
}

// Uniform draw in the open interval (0,1); never returns 0 or 1, so it is
// safe inside log().
inline double uniform01(std::uint64_t key, std::uint64_t counter) noexcept {
  return (static_cast<double>(bits_at(key, counter) >> 11) + 0.5) * 0x1.0p-53;
}

// One standard normal per counter (Box-Muller, cosine branch). Counters
// 2c and 2c+1 of the underlying uniform stream back the draw at counter c.
inline double normal(std::uint64_t key, std::uint64_t counter) noexcept {
  const double u1 = uniform01(key, 2 * counter);
  const double u2 = uniform01(key, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

struct NormalStream {
  std::uint64_t key = 0;
  double operator()(std::uint64_t counter) const noexcept {
    return normal(key, counter);
  }
};

// Stream tags used across the library so that distinct consumers of the
// same seed never overlap.
enum StreamTag : std::uint64_t {
  kTagLightconeNoise = 1,
  kTagCholesky = 2,
  kTagCirculant = 3,
  kTagMultiplier = 4,
  kTagMultifractalNoise = 5,
  kTagTree = 6,
  kTagScaleShift = 7,
};

}  // namespace fraclattice::rng
