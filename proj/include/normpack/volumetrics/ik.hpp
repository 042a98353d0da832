#pragma once

#include <cstdint>
#include <string>

#include "normpack/volumetrics/overlap.hpp"

namespace normpack::volumetrics {

/// Threshold d^-10, floored at 1e-6.
double default_ik_delta(int d);

struct IkOptions {
  std::uint64_t outer_samples = 2000;
  ClassifierOptions classifier;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

/// Estimate of I_K = {x : vol(K cap (K + x)) > delta} and Delta_K = (d vol I_K)^-1.
struct IkProfile {
  double delta = 0.0;
  McEstimate volume;
  double delta_k = 0.0;  // +inf when vol(I_K) is estimated as 0
  std::uint64_t outer = 0;
  std::uint64_t hits = 0;
  std::uint64_t boundary = 0;  // counted as hits
  double region_volume = 0.0;
  std::string region;  // "2K" or "ball"
  std::string flag;    // "", "delta>=1", "all-hits", "no-hits"
  std::string body;
};

/// Samples x uniformly in the smaller of 2K and the Euclidean ball of radius
/// overlap_radius_bound(K, delta) (both contain I_K and have known volume),
/// classifies each x and scales the hit fraction by the region volume.
IkProfile estimate_ik(const ConvexBody& body, double delta, const IkOptions& opts);

}  // namespace normpack::volumetrics
