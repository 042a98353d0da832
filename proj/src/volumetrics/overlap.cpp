#include "normpack/volumetrics/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace normpack::volumetrics {

const char* to_string(OverlapVerdict v) {
  switch (v) {
    case OverlapVerdict::Above:
      return "above";
    case OverlapVerdict::Below:
      return "below";
    case OverlapVerdict::Boundary:
      return "boundary";
  }
  return "?";
}

double overlap_radius_bound(const ConvexBody& body, double delta) {
  const double vol = body.volume();
  if (delta >= vol * (1.0 - 1e-12)) return 0.0;
  const double r2k = 2.0 * body.circumradius();
  return r2k * std::min(1.0, std::log(vol / delta));
}

OverlapClass classify_overlap(const ConvexBody& body, std::span<const double> w, double delta, std::uint64_t seed,
                              const ClassifierOptions& opts) {
  if (opts.base_samples < 1) throw std::invalid_argument("classify_overlap: base_samples must be positive");
  const double vol = body.volume();
  const double g = body.gauge(w);
  OverlapClass out;
  out.estimate.seed = seed;
  if (g >= 2.0) {
    out.verdict = OverlapVerdict::Below;
    out.shortcut = true;
    return out;
  }
  if (opts.exact_shortcuts) {
    const double lower = vol * std::pow(1.0 - 0.5 * g, body.dim());
    if (lower > delta) {
      out.verdict = OverlapVerdict::Above;
      out.estimate.value = lower;
      out.shortcut = true;
      return out;
    }
    const double ww = dot(w, w);
    const double h = body.support(w);
    const double upper = h > 0.0 ? vol * std::exp(-ww / (2.0 * h)) : vol;
    if (upper <= delta) {
      out.verdict = OverlapVerdict::Below;
      out.estimate.value = upper;
      out.shortcut = true;
      return out;
    }
  }

  std::uint64_t total = 0, hits = 0;
  std::uint64_t target = opts.base_samples;
  for (int stage = 0; stage <= opts.max_escalations; ++stage) {
    const std::uint64_t n = target - total;
    hits += detail::intersection_hits(body, w, n, derive_seed(seed, static_cast<std::uint64_t>(stage)), opts.workers);
    total = target;
    const double p = static_cast<double>(hits) / static_cast<double>(total);
    const double ps = (static_cast<double>(hits) + 0.5) / (static_cast<double>(total) + 1.0);
    const double sigma = vol * std::sqrt(ps * (1.0 - ps) / static_cast<double>(total));
    out.estimate = {vol * p, sigma, total, seed};
    if (vol * p - opts.z * sigma > delta) {
      out.verdict = OverlapVerdict::Above;
      return out;
    }
    if (vol * p + opts.z * sigma < delta) {
      out.verdict = OverlapVerdict::Below;
      return out;
    }
    target *= 4;
  }
  out.verdict = OverlapVerdict::Boundary;
  return out;
}

}  // namespace normpack::volumetrics
