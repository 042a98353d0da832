#include "normpack/packing/poisson.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "normpack/common/rng.hpp"

namespace normpack::packing {

PointSet sample_poisson(const TorusDomain& domain, double delta, std::uint64_t seed, double max_expected_points) {
  if (domain.d < 1) throw std::invalid_argument("dimension must be positive");
  if (!(domain.L > 0.0) || !std::isfinite(domain.L)) throw std::invalid_argument("torus side must be positive");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("Delta must be positive");
  const double intensity = std::ldexp(delta, -domain.d);
  const double mean = intensity * domain.volume();
  if (!(mean <= max_expected_points))
    throw std::length_error("expected point count " + std::to_string(mean) + " exceeds the cap " +
                            std::to_string(max_expected_points));

  Rng count_rng = make_rng(derive_seed(seed, "poisson-count"));
  std::poisson_distribution<std::uint64_t> count(mean);
  const std::uint64_t n = mean > 0.0 ? count(count_rng) : 0;

  PointSet set;
  set.d = domain.d;
  set.seed = seed;
  set.intensity = intensity;
  set.coords.resize(static_cast<std::size_t>(n) * domain.d);
  Rng rng = make_rng(derive_seed(seed, "poisson-points"));
  for (double& c : set.coords) c = domain.L * uniform01(rng);
  return set;
}

double poisson_upper_tail(double mean, std::uint64_t k) {
  if (k == 0) return 1.0;
  if (mean <= 0.0) return 0.0;
  // Sum pmf(j) for j >= k from the larger terms outward.
  auto log_pmf = [&](double j) { return -mean + j * std::log(mean) - std::lgamma(j + 1.0); };
  const double kd = static_cast<double>(k);
  if (kd <= mean) {
    double lower = 0.0;
    for (std::uint64_t j = 0; j < k; ++j) lower += std::exp(log_pmf(static_cast<double>(j)));
    return std::max(0.0, 1.0 - lower);
  }
  double sum = 0.0;
  for (double j = kd;; j += 1.0) {
    const double term = std::exp(log_pmf(j));
    sum += term;
    if (term < sum * 1e-17 || term == 0.0) break;
  }
  return std::min(1.0, sum);
}

PoissonTailReport check_poisson_tail(double lambda, double t, std::uint64_t draws, std::uint64_t seed) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(t >= 1.0)) throw std::invalid_argument("the tail bound needs t >= 1");
  if (draws == 0) throw std::invalid_argument("draws must be positive");
  PoissonTailReport r;
  r.lambda = lambda;
  r.t = t;
  r.draws = draws;
  r.seed = seed;
  Rng rng = make_rng(derive_seed(seed, "poisson-tail"));
  std::poisson_distribution<std::uint64_t> dist(lambda);
  const double threshold = (1.0 + t) * lambda;
  for (std::uint64_t i = 0; i < draws; ++i)
    if (static_cast<double>(dist(rng)) > threshold) ++r.exceedances;
  r.empirical = static_cast<double>(r.exceedances) / static_cast<double>(draws);
  r.bound = std::exp(-lambda * t / 3.0);
  const double p = std::min(r.bound, 1.0);
  r.sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
  r.exact = poisson_upper_tail(lambda, static_cast<std::uint64_t>(std::floor(threshold)) + 1);
  return r;
}

}  // namespace normpack::packing
