#include "normpack/volumetrics/ik.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace normpack::volumetrics {

double default_ik_delta(int d) { return std::max(std::pow(static_cast<double>(d), -10.0), 1e-6); }

IkProfile estimate_ik(const ConvexBody& body, double delta, const IkOptions& opts) {
  if (!(delta > 0.0)) throw std::invalid_argument("estimate_ik: delta must be positive");
  if (opts.outer_samples < 1) throw std::invalid_argument("estimate_ik: outer_samples must be positive");
  const int d = body.dim();
  const double vol = body.volume();
  IkProfile prof;
  prof.delta = delta;
  prof.body = body.describe();
  prof.volume.seed = opts.seed;
  if (delta >= vol * (1.0 - 1e-12)) {
    prof.flag = "delta>=1";
    prof.delta_k = std::numeric_limits<double>::infinity();
    return prof;
  }

  const double radius = overlap_radius_bound(body, delta);
  const double ball_volume = bodies::unit_ball_volume(d) * std::pow(radius, d);
  const double twice_volume = std::pow(2.0, d) * vol;
  const bool use_ball = ball_volume < twice_volume;
  prof.region = use_ball ? "ball" : "2K";
  prof.region_volume = use_ball ? ball_volume : twice_volume;
  const ConvexBody doubled = body.scaled_by(2.0);

  const std::uint64_t point_seed = derive_seed(opts.seed, "ik-points");
  const std::uint64_t class_seed = derive_seed(opts.seed, "ik-classify");
  std::vector<OverlapVerdict> verdicts(opts.outer_samples);
  parallel_for(opts.outer_samples, opts.workers, [&](std::size_t i, unsigned) {
    Rng rng = make_rng(derive_seed(point_seed, static_cast<std::uint64_t>(i)));
    Vec x(d);
    if (use_ball) {
      random_direction(rng, x);
      const double r = radius * std::pow(uniform01(rng), 1.0 / d);
      for (double& v : x) v *= r;
    } else {
      bodies::UniformSampler sampler(doubled);
      sampler.draw(rng, x);
    }
    ClassifierOptions copts = opts.classifier;
    copts.workers = 1;
    verdicts[i] = classify_overlap(body, x, delta, derive_seed(class_seed, static_cast<std::uint64_t>(i)), copts).verdict;
  });

  prof.outer = opts.outer_samples;
  for (auto v : verdicts) {
    if (v == OverlapVerdict::Above) ++prof.hits;
    if (v == OverlapVerdict::Boundary) {
      ++prof.hits;
      ++prof.boundary;
    }
  }
  prof.volume = detail::binomial_estimate(prof.region_volume, prof.hits, prof.outer, opts.seed);
  prof.delta_k = prof.volume.value > 0.0 ? 1.0 / (d * prof.volume.value) : std::numeric_limits<double>::infinity();
  if (prof.hits == prof.outer) prof.flag = "all-hits";
  if (prof.hits == 0) prof.flag = "no-hits";
  return prof;
}

}  // namespace normpack::volumetrics
