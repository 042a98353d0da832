#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace normpack {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Child seed for a named stage. Every stochastic quantity in a run descends
/// from the master seed through a chain of these derivations.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::string_view label) {
  return mix64(parent ^ mix64(fnv1a(label)));
}

/// Child seed for the index-th work item of a stage.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  return mix64(mix64(parent) + 0x632be59bd9b4e019ULL * (index + 1));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Uniform in [0, 1) with 53 random bits; independent of the standard
/// library's distribution implementation.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniformly distributed unit vector (Gaussian normalization).
void random_direction(Rng& rng, std::span<double> out);

}  // namespace normpack
