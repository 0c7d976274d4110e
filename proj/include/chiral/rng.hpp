#pragma once

#include <cstdint>

namespace chiral::rng {

// Counter-based generator: every variate is a pure hash of
// (seed, stream, substream, draw). Realizations can be evaluated in any
// order, or in parallel, and still reproduce bit-identically.

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t keyed(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t substream, std::uint64_t draw) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ stream);
  h = mix64(h ^ substream);
  h = mix64(h ^ draw);
  return h;
}

// Uniform on [0, 1), 53-bit resolution.
inline double uniform01(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t substream, std::uint64_t draw) {
  return static_cast<double>(keyed(seed, stream, substream, draw) >> 11) *
         0x1.0p-53;
}

// Uniform on [-half_width, half_width).
inline double uniform_symmetric(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t substream, std::uint64_t draw,
                                double half_width) {
  return (2.0 * uniform01(seed, stream, substream, draw) - 1.0) * half_width;
}

}  // namespace chiral::rng
