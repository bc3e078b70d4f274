#pragma once

#include <cstdint>
#include <random>

namespace filled {

// SplitMix64 finalizer. Used to derive independent, reproducible streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream for restart `r` of a search seeded with `seed`.
inline std::mt19937_64 restart_stream(std::uint64_t seed, std::uint64_t r) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(r + 0x632be59bd9b4e019ULL)));
}

// Unbiased draw from [0, bound). std::uniform_int_distribution is avoided
// because its output differs between standard library implementations and
// recorded seeds must replay identically.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t v = rng();
    if (v < limit) return v % bound;
  }
}

}  // namespace filled
