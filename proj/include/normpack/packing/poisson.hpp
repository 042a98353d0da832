#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "normpack/packing/torus.hpp"

namespace normpack::packing {

struct PointSet {
  int d = 2;
  std::vector<double> coords;  // row-major, size() x d
  std::uint64_t seed = 0;
  double intensity = 0.0;

  std::size_t size() const { return d > 0 ? coords.size() / static_cast<std::size_t>(d) : 0; }
  std::span<const double> point(std::size_t i) const { return {coords.data() + i * d, static_cast<std::size_t>(d)}; }
};

/// Poisson process of intensity 2^-d Delta on the torus: N ~ Poisson(lambda L^d)
/// followed by N i.i.d. uniform points. Throws if the expected count exceeds
/// max_expected_points.
PointSet sample_poisson(const TorusDomain& domain, double delta, std::uint64_t seed,
                        double max_expected_points = 5e6);

/// P[Poisson(mean) >= k].
double poisson_upper_tail(double mean, std::uint64_t k);

struct PoissonTailReport {
  double lambda = 0.0;
  double t = 0.0;
  std::uint64_t draws = 0;
  std::uint64_t exceedances = 0;  // draws with Z > (1 + t) lambda
  double empirical = 0.0;
  double bound = 0.0;  // exp(-lambda t / 3)
  double sigma = 0.0;  // binomial sd of the empirical fraction at the bound
  double exact = 0.0;
  std::uint64_t seed = 0;
};

/// Empirical check of P[Z > (1 + t) lambda] <= exp(-lambda t / 3) for t >= 1.
PoissonTailReport check_poisson_tail(double lambda, double t, std::uint64_t draws, std::uint64_t seed);

}  // namespace normpack::packing
