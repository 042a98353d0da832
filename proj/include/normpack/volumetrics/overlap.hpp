#pragma once

#include <cstdint>
#include <span>

#include "normpack/volumetrics/estimate.hpp"

namespace normpack::volumetrics {

enum class OverlapVerdict { Above, Below, Boundary };

const char* to_string(OverlapVerdict v);

struct ClassifierOptions {
  std::uint64_t base_samples = 4000;
  /// Sample size grows x4 per escalation, so the cap is base * 4^max.
  int max_escalations = 3;
  double z = 3.0;
  /// Use the exact bounds (1 - g/2)^d vol K <= f(w) <= vol K exp(-|w|^2 vol K / (2 h_K(w)))
  /// to skip sampling. Verifiers of those very bounds turn this off.
  bool exact_shortcuts = true;
  unsigned workers = 1;
};

struct OverlapClass {
  OverlapVerdict verdict = OverlapVerdict::Boundary;
  McEstimate estimate;
  bool shortcut = false;
};

/// Decides f(w) > delta with sequential sample-size escalation: sampling stops
/// once the z-sigma band excludes delta; if the cap is reached first the
/// point is labelled Boundary.
OverlapClass classify_overlap(const ConvexBody& body, std::span<const double> w, double delta, std::uint64_t seed,
                              const ClassifierOptions& opts);

/// Radius r such that f(w) > delta implies |w| <= r (unit of the body's
/// volume). Follows from log-concavity of f and vol_{d-1}(shadow) >= vol K / width.
double overlap_radius_bound(const ConvexBody& body, double delta);

}  // namespace normpack::volumetrics
