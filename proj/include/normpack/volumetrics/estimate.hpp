#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "normpack/bodies/convex_body.hpp"
#include "normpack/common/parallel.hpp"
#include "normpack/common/rng.hpp"

namespace normpack::volumetrics {

using bodies::ConvexBody;

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct McOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

namespace detail {

inline constexpr std::uint64_t kChunk = 1u << 15;

/// Splits `samples` draws into fixed chunks with per-chunk child seeds and
/// sums chunk(rng, count) -> hits in chunk order. The total is independent
/// of the worker count.
template <class ChunkFn>
std::uint64_t count_hits(std::uint64_t samples, std::uint64_t seed, unsigned workers, ChunkFn&& chunk) {
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_for(chunks, workers, [&](std::size_t c, unsigned) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    const std::uint64_t n = std::min<std::uint64_t>(kChunk, samples - c * kChunk);
    hits[c] = chunk(rng, n);
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return total;
}

inline McEstimate binomial_estimate(double scale, std::uint64_t hits, std::uint64_t n, std::uint64_t seed) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {scale * p, scale * std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n, seed};
}

/// Number of y uniform in K (out of n) with y - x in K.
std::uint64_t intersection_hits(const ConvexBody& body, std::span<const double> x, std::uint64_t n,
                                std::uint64_t seed, unsigned workers);

}  // namespace detail

/// Hit-or-miss volume estimate from the bounding box; std_error from the
/// binomial variance.
McEstimate mc_volume(const ConvexBody& body, const McOptions& opts);

/// f(x) = vol(K cap (K + x)) estimated as vol(K) * P[y - x in K] for y
/// uniform in K. Requires body.volume() (closed form or attached estimate).
McEstimate intersection_volume(const ConvexBody& body, std::span<const double> x, const McOptions& opts);

/// Unit-volume rescaling; bodies without a closed form are measured by
/// mc_volume first and carry that estimate's relative error.
ConvexBody normalize_with_mc(const ConvexBody& body, const McOptions& opts);

}  // namespace normpack::volumetrics
