#include "normpack/volumetrics/estimate.hpp"

#include <stdexcept>

namespace normpack::volumetrics {

McEstimate mc_volume(const ConvexBody& body, const McOptions& opts) {
  if (opts.samples < 1000) throw std::invalid_argument("mc_volume: need at least 1000 samples");
  const auto box = body.box_half_widths();
  const std::size_t d = static_cast<std::size_t>(body.dim());
  const std::uint64_t hits = detail::count_hits(opts.samples, opts.seed, opts.workers, [&](Rng& rng, std::uint64_t n) {
    Vec x(d);
    std::uint64_t h = 0;
    for (std::uint64_t s = 0; s < n; ++s) {
      for (std::size_t i = 0; i < d; ++i) x[i] = uniform(rng, -box[i], box[i]);
      if (body.gauge(x) <= 1.0) ++h;
    }
    return h;
  });
  return detail::binomial_estimate(body.box_volume(), hits, opts.samples, opts.seed);
}

namespace detail {

std::uint64_t intersection_hits(const ConvexBody& body, std::span<const double> x, std::uint64_t n,
                                std::uint64_t seed, unsigned workers) {
  const std::size_t d = x.size();
  return count_hits(n, seed, workers, [&](Rng& rng, std::uint64_t count) {
    bodies::UniformSampler sampler(body);
    Vec y(d), diff(d);
    std::uint64_t h = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
      sampler.draw(rng, y);
      for (std::size_t i = 0; i < d; ++i) diff[i] = y[i] - x[i];
      if (body.gauge(diff) <= 1.0) ++h;
    }
    return h;
  });
}

}  // namespace detail

McEstimate intersection_volume(const ConvexBody& body, std::span<const double> x, const McOptions& opts) {
  if (opts.samples < 1) throw std::invalid_argument("intersection_volume: need at least one sample");
  if (x.size() != static_cast<std::size_t>(body.dim())) throw std::invalid_argument("dimension mismatch");
  const double vol = body.volume();
  const std::uint64_t hits = detail::intersection_hits(body, x, opts.samples, opts.seed, opts.workers);
  return detail::binomial_estimate(vol, hits, opts.samples, opts.seed);
}

ConvexBody normalize_with_mc(const ConvexBody& body, const McOptions& opts) {
  if (body.has_volume()) return bodies::normalize_to_unit_volume(body);
  const McEstimate v = mc_volume(body, opts);
  if (!(v.value > 0.0)) throw std::runtime_error("normalize: Monte Carlo volume estimate is zero");
  return bodies::normalize_to_unit_volume(body.with_estimated_volume(v.value, v.std_error / v.value));
}

}  // namespace normpack::volumetrics
