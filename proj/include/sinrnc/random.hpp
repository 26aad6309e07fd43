#pragma once

#include <cstdint>
#include <random>

namespace sinrnc {

using Seed = std::uint64_t;
using Rng = std::mt19937_64;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Child seed for (stream, index) under `parent`. Independent of how many
// siblings are drawn, so trial i is reproducible on its own.
constexpr Seed derive_seed(Seed parent, std::uint64_t stream,
                           std::uint64_t index = 0) noexcept {
  return mix64(mix64(parent ^ mix64(stream)) + index);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Named streams used when deriving seeds.
namespace stream {
inline constexpr std::uint64_t kPlacement = 1;
inline constexpr std::uint64_t kPower = 2;
inline constexpr std::uint64_t kInstance = 3;
inline constexpr std::uint64_t kCut = 4;
inline constexpr std::uint64_t kCbar = 5;
inline constexpr std::uint64_t kPairs = 6;
inline constexpr std::uint64_t kMeanInterference = 7;
}  // namespace stream

}  // namespace sinrnc
