#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "normpack/bodies/convex_body.hpp"
#include "normpack/packing/poisson.hpp"

namespace normpack::packing {

/// Intersection graph G(X, K) in compressed adjacency form: an edge xy exists
/// iff gauge(minimal_image(x - y)) <= 2, i.e. x + K and y + K intersect.
/// Neighbor lists are sorted; no self-loops.
struct PackingGraph {
  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint32_t> neighbors;
  /// Vertex index in the originating PointSet.
  std::vector<std::uint32_t> original_index;

  std::size_t vertex_count() const { return offsets.size() - 1; }
  std::size_t edge_count() const { return neighbors.size() / 2; }
  std::size_t degree(std::size_t v) const { return static_cast<std::size_t>(offsets[v + 1] - offsets[v]); }
  std::span<const std::uint32_t> neighbors_of(std::size_t v) const {
    return {neighbors.data() + offsets[v], degree(v)};
  }
  bool adjacent(std::size_t u, std::size_t v) const;

  /// Builds from unsorted per-vertex lists (must be symmetric).
  static PackingGraph from_lists(std::vector<std::vector<std::uint32_t>> lists);
};

/// Spatial-hash construction with cells of side >= circumradius(2K), scanning
/// the 3^d neighboring cells of each point.
PackingGraph build_graph(const PointSet& points, const bodies::ConvexBody& body, const TorusDomain& domain,
                         unsigned workers = 1);

/// Subgraph induced by `keep` (sorted vertex ids), relabelled 0..|keep|-1.
PackingGraph induced_subgraph(const PackingGraph& g, std::span<const std::uint32_t> keep);

struct DegreeStats {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::vector<std::size_t> histogram;  // histogram[k] = #vertices of degree k
  std::size_t max_degree = 0;
  double mean_degree = 0.0;
  std::size_t max_codegree = 0;  // over all vertex pairs sharing a neighbor
};

DegreeStats degree_codegree_stats(const PackingGraph& g);

/// Plain-text export: one `v <idx> <coords...>` line per point, then one
/// `e <i> <j>` line per edge (i < j), indices in PointSet numbering.
void export_graph(std::ostream& out, const PointSet& points, const PackingGraph& g);

}  // namespace normpack::packing
