#include "normpack/volumetrics/projection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace normpack::volumetrics {

using bodies::BodyKind;

std::optional<double> analytic_projection_support(const ConvexBody& body, std::span<const double> u) {
  const int d = body.dim();
  if (u.size() != static_cast<std::size_t>(d)) throw std::invalid_argument("dimension mismatch");
  if (d == 1) return std::abs(u[0]);
  if (body.kind() != BodyKind::LpBall) return std::nullopt;
  if (body.p() == 2.0) return bodies::unit_ball_volume(d - 1) * std::pow(body.scale(), d - 1) * norm2(u);
  if (std::isinf(body.p())) return std::pow(2.0 * body.scale(), d - 1) * norm1(u);
  return std::nullopt;
}

McEstimate proj_body_support(const ConvexBody& body, std::span<const double> u, const McOptions& opts,
                             bool allow_analytic) {
  const std::size_t d = static_cast<std::size_t>(body.dim());
  if (u.size() != d) throw std::invalid_argument("dimension mismatch");
  if (std::abs(norm2(u) - 1.0) > 1e-9) throw std::invalid_argument("proj_body_support: u must be a unit vector");
  if (allow_analytic || d == 1) {
    if (auto h = analytic_projection_support(body, u)) return {*h, 0.0, 0, opts.seed};
  }
  const std::vector<Vec> basis = orthogonal_complement(u);
  Vec half(d - 1);
  double box = 1.0;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    half[k] = body.support(basis[k]);
    box *= 2.0 * half[k];
  }
  const std::uint64_t hits = detail::count_hits(opts.samples, opts.seed, opts.workers, [&](Rng& rng, std::uint64_t n) {
    Vec p(d);
    std::uint64_t h = 0;
    for (std::uint64_t s = 0; s < n; ++s) {
      std::fill(p.begin(), p.end(), 0.0);
      for (std::size_t k = 0; k + 1 < d; ++k) {
        const double z = uniform(rng, -half[k], half[k]);
        for (std::size_t i = 0; i < d; ++i) p[i] += z * basis[k][i];
      }
      if (body.line_meets(p, u)) ++h;
    }
    return h;
  });
  return detail::binomial_estimate(box, hits, opts.samples, opts.seed);
}

std::optional<double> analytic_polar_projection_volume(const ConvexBody& body) {
  const int d = body.dim();
  if (body.kind() != BodyKind::LpBall) return std::nullopt;
  const double r = body.scale();
  if (body.p() == 2.0) {
    const double log_v = bodies::log_unit_ball_volume(d) -
                         d * (bodies::log_unit_ball_volume(d - 1) + (d - 1) * std::log(r));
    return std::exp(log_v);
  }
  if (std::isinf(body.p())) {
    // Pi* of [-a, a]^d is the l1 ball of radius (2a)^{-(d-1)}.
    const double log_v = d * std::log(2.0) - std::lgamma(d + 1.0) - d * (d - 1) * std::log(2.0 * r);
    return std::exp(log_v);
  }
  return std::nullopt;
}

PolarProjBall polar_proj_ball_volume(int d) {
  if (d < 1) throw std::invalid_argument("polar_proj_ball_volume: d must be >= 1");
  PolarProjBall out;
  out.d = d;
  out.log_value = d * (bodies::log_unit_ball_volume(d) - bodies::log_unit_ball_volume(d - 1));
  out.log_bound = 0.5 * d * std::log(2.0 * std::numbers::pi / d);
  out.value = std::exp(out.log_value);
  out.bound = std::exp(out.log_bound);
  out.within_bound = out.log_value <= out.log_bound;
  return out;
}

double half_factorial_ratio(double x) { return std::exp(std::lgamma(x + 1.0) - std::lgamma(x + 0.5)); }

}  // namespace normpack::volumetrics
