#pragma once

#include <optional>
#include <span>

#include "normpack/volumetrics/estimate.hpp"

namespace normpack::volumetrics {

/// Closed-form h_{Pi K}(u) for the Euclidean ball (gamma_{d-1} r^{d-1} |u|),
/// the cube [-a, a]^d ((2a)^{d-1} ||u||_1) and any body in d = 1.
std::optional<double> analytic_projection_support(const ConvexBody& body, std::span<const double> u);

/// h_{Pi K}(u) = vol_{d-1} of the shadow of K on u^perp, for a unit vector u.
/// The shadow is sampled from its (d-1)-dimensional bounding box in an
/// orthonormal basis of u^perp; a sample counts when the line z + t u meets K.
McEstimate proj_body_support(const ConvexBody& body, std::span<const double> u, const McOptions& opts,
                             bool allow_analytic = true);

/// vol(Pi* K) in closed form where the projection body is known.
std::optional<double> analytic_polar_projection_volume(const ConvexBody& body);

struct PolarProjBall {
  int d = 0;
  double value = 0.0;  // (gamma_d / gamma_{d-1})^d
  double bound = 0.0;  // (2 pi / d)^{d/2}
  double log_value = 0.0;
  double log_bound = 0.0;
  bool within_bound = false;
};

/// vol(Pi* B) for the unit-volume Euclidean ball of R^d, with gamma_0 = 1.
PolarProjBall polar_proj_ball_volume(int d);

/// x! / (x - 1/2)! = Gamma(x + 1) / Gamma(x + 1/2).
double half_factorial_ratio(double x);

}  // namespace normpack::volumetrics
