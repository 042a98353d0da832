#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "normpack/bodies/convex_body.hpp"

namespace normpack::packing {

/// Flat torus [0, L)^d. Displacements use the minimal-image representative in
/// (-L/2, L/2]^d.
struct TorusDomain {
  int d = 2;
  double L = 1.0;

  double volume() const { return std::pow(L, d); }

  void minimal_image(std::span<const double> a, std::span<const double> b, std::span<double> out) const {
    for (int i = 0; i < d; ++i) {
      double z = a[i] - b[i];
      z -= L * std::round(z / L);
      if (z <= -0.5 * L) z += L;
      out[i] = z;
    }
  }

  /// Smallest admissible side for a body: L must exceed 4 circumradius(2K) so
  /// no translate of 2K meets its own periodic image.
  static double min_side(const bodies::ConvexBody& body) { return 8.0 * body.circumradius(); }

  void validate_for(const bodies::ConvexBody& body) const {
    if (body.dim() != d) throw std::invalid_argument("torus and body dimensions differ");
    if (!(L > min_side(body)))
      throw std::invalid_argument("torus side L must exceed 4 * circumradius(2K) = " + std::to_string(min_side(body)));
  }
};

}  // namespace normpack::packing
