#pragma once

// Brute-force graph references computed from raw coordinates.

#include <bit>
#include <cstdint>
#include <vector>

#include "normpack/bodies/convex_body.hpp"
#include "normpack/packing/poisson.hpp"
#include "normpack/packing/torus.hpp"

namespace oracle {

/// Adjacency bit-matrix over all pairs: gauge(minimal image) <= 2.
struct DenseGraph {
  std::size_t n = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> bits;

  bool has(std::size_t i, std::size_t j) const { return (bits[i * words + j / 64] >> (j % 64)) & 1; }
  std::size_t degree(std::size_t i) const {
    std::size_t s = 0;
    for (std::size_t w = 0; w < words; ++w) s += std::popcount(bits[i * words + w]);
    return s;
  }
  std::size_t codegree(std::size_t i, std::size_t j) const {
    std::size_t s = 0;
    for (std::size_t w = 0; w < words; ++w) s += std::popcount(bits[i * words + w] & bits[j * words + w]);
    return s;
  }
};

inline DenseGraph brute_force_graph(const normpack::packing::PointSet& pts, const normpack::bodies::ConvexBody& body,
                                    const normpack::packing::TorusDomain& dom, const std::vector<std::uint32_t>* subset = nullptr) {
  DenseGraph g;
  std::vector<std::uint32_t> ids;
  if (subset) {
    ids = *subset;
  } else {
    for (std::size_t i = 0; i < pts.size(); ++i) ids.push_back(static_cast<std::uint32_t>(i));
  }
  g.n = ids.size();
  g.words = (g.n + 63) / 64;
  g.bits.assign(g.n * g.words, 0);
  std::vector<double> z(dom.d);
  for (std::size_t a = 0; a < g.n; ++a)
    for (std::size_t b = a + 1; b < g.n; ++b) {
      dom.minimal_image(pts.point(ids[b]), pts.point(ids[a]), z);
      if (body.gauge(z) <= 2.0) {
        g.bits[a * g.words + b / 64] |= std::uint64_t{1} << (b % 64);
        g.bits[b * g.words + a / 64] |= std::uint64_t{1} << (a % 64);
      }
    }
  return g;
}

struct BoundCheck {
  std::size_t max_degree = 0;
  std::size_t max_codegree = 0;
  std::size_t degree_violations = 0;
  std::size_t codegree_violations = 0;
};

/// Rechecks |X cap (x + 2K)| <= degree_threshold and codegree < codegree_threshold
/// over all pairs of the given point subset.
inline BoundCheck recheck_bounds(const DenseGraph& g, double degree_threshold, double codegree_threshold) {
  BoundCheck r;
  for (std::size_t i = 0; i < g.n; ++i) {
    const std::size_t deg = g.degree(i);
    r.max_degree = std::max(r.max_degree, deg);
    if (static_cast<double>(deg + 1) > degree_threshold) ++r.degree_violations;
    for (std::size_t j = i + 1; j < g.n; ++j) {
      const std::size_t c = g.codegree(i, j);
      r.max_codegree = std::max(r.max_codegree, c);
      if (static_cast<double>(c) >= codegree_threshold) ++r.codegree_violations;
    }
  }
  return r;
}

}  // namespace oracle
