#include "normpack/packing/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "normpack/common/parallel.hpp"
#include "normpack/packing/spatial_hash.hpp"

namespace normpack::packing {

bool PackingGraph::adjacent(std::size_t u, std::size_t v) const {
  const auto nb = neighbors_of(u);
  return std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(v));
}

PackingGraph PackingGraph::from_lists(std::vector<std::vector<std::uint32_t>> lists) {
  PackingGraph g;
  g.offsets.assign(1, 0);
  g.offsets.reserve(lists.size() + 1);
  std::size_t total = 0;
  for (const auto& l : lists) total += l.size();
  g.neighbors.reserve(total);
  for (auto& l : lists) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    g.neighbors.insert(g.neighbors.end(), l.begin(), l.end());
    g.offsets.push_back(g.neighbors.size());
  }
  g.original_index.resize(lists.size());
  for (std::size_t i = 0; i < lists.size(); ++i) g.original_index[i] = static_cast<std::uint32_t>(i);
  return g;
}

PackingGraph build_graph(const PointSet& points, const bodies::ConvexBody& body, const TorusDomain& domain,
                         unsigned workers) {
  domain.validate_for(body);
  if (points.d != domain.d) throw std::invalid_argument("point set and torus dimensions differ");
  const std::size_t n = points.size();
  if (n > std::size_t{0xffffffffu}) throw std::length_error("too many points for 32-bit vertex ids");
  const double reach = 2.0 * body.circumradius();
  const SpatialHash hash(points, domain, reach * (1.0 + 1e-9));

  std::vector<std::vector<std::uint32_t>> lists(n);
  std::vector<std::vector<double>> scratch(std::max(1u, workers), std::vector<double>(domain.d));
  parallel_for(n, workers, [&](std::size_t i, unsigned w) {
    auto& z = scratch[w];
    const auto xi = points.point(i);
    hash.for_each_candidate(xi, reach, [&](std::uint32_t j) {
      if (j == i) return;
      domain.minimal_image(points.point(j), xi, z);
      if (body.gauge(z) <= 2.0) lists[i].push_back(j);
    });
  });
  return PackingGraph::from_lists(std::move(lists));
}

PackingGraph induced_subgraph(const PackingGraph& g, std::span<const std::uint32_t> keep) {
  const std::uint32_t none = 0xffffffffu;
  std::vector<std::uint32_t> relabel(g.vertex_count(), none);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] >= g.vertex_count()) throw std::out_of_range("vertex id out of range");
    if (k > 0 && keep[k] <= keep[k - 1]) throw std::invalid_argument("keep must be sorted and distinct");
    relabel[keep[k]] = static_cast<std::uint32_t>(k);
  }
  PackingGraph h;
  h.offsets.assign(1, 0);
  h.original_index.reserve(keep.size());
  for (std::uint32_t v : keep) {
    for (std::uint32_t u : g.neighbors_of(v))
      if (relabel[u] != none) h.neighbors.push_back(relabel[u]);
    h.offsets.push_back(h.neighbors.size());
    h.original_index.push_back(g.original_index[v]);
  }
  return h;
}

DegreeStats degree_codegree_stats(const PackingGraph& g) {
  DegreeStats s;
  s.vertices = g.vertex_count();
  s.edges = g.edge_count();
  for (std::size_t v = 0; v < s.vertices; ++v) s.max_degree = std::max(s.max_degree, g.degree(v));
  s.histogram.assign(s.max_degree + 1, 0);
  for (std::size_t v = 0; v < s.vertices; ++v) ++s.histogram[g.degree(v)];
  s.mean_degree = s.vertices ? 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.vertices) : 0.0;
  std::vector<std::uint32_t> count(s.vertices, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t x = 0; x < s.vertices; ++x) {
    for (std::uint32_t w : g.neighbors_of(x))
      for (std::uint32_t y : g.neighbors_of(w)) {
        if (y == x) continue;
        if (count[y]++ == 0) touched.push_back(y);
      }
    for (std::uint32_t y : touched) {
      s.max_codegree = std::max<std::size_t>(s.max_codegree, count[y]);
      count[y] = 0;
    }
    touched.clear();
  }
  return s;
}

void export_graph(std::ostream& out, const PointSet& points, const PackingGraph& g) {
  out.precision(17);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const std::uint32_t idx = g.original_index[v];
    out << "v " << idx;
    for (double c : points.point(idx)) out << ' ' << c;
    out << '\n';
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (std::uint32_t u : g.neighbors_of(v))
      if (u > v) out << "e " << g.original_index[v] << ' ' << g.original_index[u] << '\n';
}

}  // namespace normpack::packing
