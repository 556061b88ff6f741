#pragma once

#include <cstdint>

namespace qg {

// Counter-based randomness: every draw is a pure function of
// (seed, sample index, stream id), so parallel sampling order cannot
// change results. SplitMix64 finalizer chain.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t sample,
                                  std::uint64_t stream) {
  return splitmix64(splitmix64(splitmix64(seed) ^ sample) ^ stream);
}

// Uniform in [0, 1) with 53-bit resolution.
inline double counter_u01(std::uint64_t seed, std::uint64_t sample,
                          std::uint64_t stream) {
  return static_cast<double>(counter_hash(seed, sample, stream) >> 11) * 0x1.0p-53;
}

}  // namespace qg
