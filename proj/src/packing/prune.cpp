#include "normpack/packing/prune.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "normpack/common/parallel.hpp"
#include "normpack/common/rng.hpp"
#include "normpack/packing/spatial_hash.hpp"
#include "normpack/volumetrics/overlap.hpp"

namespace normpack::packing {

namespace {

struct CloseScan {
  std::vector<std::uint32_t> partners;  // j > i with x_j - x_i in 2I
  std::size_t classified = 0;
  std::size_t boundary = 0;
};

}  // namespace

double default_codegree_coeff(int d) { return std::max(std::pow(static_cast<double>(d), -9.0), 1e-3); }

PruneResult prune(const PackingGraph& graph, const PointSet& points, const bodies::ConvexBody& body,
                  const volumetrics::IkProfile& ik, double delta_param, double codegree_coeff,
                  const TorusDomain& domain, const PruneOptions& opts) {
  domain.validate_for(body);
  if (ik.body != body.describe()) throw std::invalid_argument("I_K profile was computed for a different body");
  if (graph.vertex_count() != points.size()) throw std::invalid_argument("graph and point set sizes differ");
  if (!(delta_param > 0.0)) throw std::invalid_argument("Delta must be positive");
  if (!(codegree_coeff > 0.0)) throw std::invalid_argument("codegree coefficient must be positive");

  const std::size_t n = graph.vertex_count();
  const int d = domain.d;
  const unsigned slots = std::max(1u, opts.workers);
  PruneReport rep;
  rep.total = n;
  rep.degree_threshold = delta_param + std::pow(delta_param, 2.0 / 3.0);
  rep.codegree_threshold = codegree_coeff * delta_param;

  // X1: too many points in x + 2K.
  std::vector<std::uint8_t> in_x1(n, 0), in_x2(n, 0), in_x3(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    in_x1[v] = static_cast<double>(graph.degree(v) + 1) > rep.degree_threshold;

  // X2: pairs with x - y in 2I, i.e. f((x - y)/2) > delta.
  const double radius = 2.0 * volumetrics::overlap_radius_bound(body, ik.delta);
  std::vector<CloseScan> scans(n);
  if (radius > 0.0 && n > 1) {
    const SpatialHash hash(points, domain, radius * (1.0 + 1e-9));
    volumetrics::ClassifierOptions copts = opts.classifier;
    copts.workers = 1;
    const std::uint64_t pair_root = derive_seed(opts.seed, "close-pairs");
    std::vector<std::vector<double>> scratch(slots, std::vector<double>(d));
    parallel_for(n, opts.workers, [&](std::size_t i, unsigned w) {
      auto& z = scratch[w];
      const auto xi = points.point(graph.original_index[i]);
      CloseScan& scan = scans[i];
      hash.for_each_candidate(xi, radius, [&](std::uint32_t j) {
        if (j <= i) return;
        domain.minimal_image(points.point(graph.original_index[j]), xi, z);
        double sq = 0.0;
        for (double c : z) sq += c * c;
        if (sq > radius * radius) return;
        for (double& c : z) c *= 0.5;
        const auto cls = volumetrics::classify_overlap(body, z, ik.delta, derive_seed(derive_seed(pair_root, i), j), copts);
        if (!cls.shortcut) ++scan.classified;
        if (cls.verdict == volumetrics::OverlapVerdict::Boundary) ++scan.boundary;
        if (cls.verdict != volumetrics::OverlapVerdict::Below) scan.partners.push_back(j);
      });
      std::sort(scan.partners.begin(), scan.partners.end());
    });
  }
  // Symmetric close-pair lists for the S3 exclusion test.
  std::vector<std::vector<std::uint32_t>> close(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep.classified_pairs += scans[i].classified;
    rep.boundary_pairs += scans[i].boundary;
    rep.close_pairs += scans[i].partners.size();
    for (std::uint32_t j : scans[i].partners) {
      close[i].push_back(j);
      close[j].push_back(static_cast<std::uint32_t>(i));
    }
  }
  scans.clear();
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(close[i].begin(), close[i].end());
    in_x2[i] = !close[i].empty();
  }

  // X3: codegree >= c Delta with x - y outside 2I.
  std::vector<std::size_t> s3_count(n, 0);
  std::vector<std::vector<std::uint32_t>> counts(slots);
  std::vector<std::vector<std::uint32_t>> touched(slots);
  parallel_for(n, opts.workers, [&](std::size_t x, unsigned w) {
    auto& count = counts[w];
    if (count.size() != n) count.assign(n, 0);
    auto& seen = touched[w];
    for (std::uint32_t mid : graph.neighbors_of(x))
      for (std::uint32_t y : graph.neighbors_of(mid)) {
        if (y == x) continue;
        if (count[y]++ == 0) seen.push_back(y);
      }
    std::size_t pairs = 0;
    for (std::uint32_t y : seen) {
      if (static_cast<double>(count[y]) >= rep.codegree_threshold &&
          !std::binary_search(close[x].begin(), close[x].end(), y))
        ++pairs;
      count[y] = 0;
    }
    seen.clear();
    s3_count[x] = pairs;
  });
  for (std::size_t x = 0; x < n; ++x) {
    rep.s3_pairs += s3_count[x];
    in_x3[x] = s3_count[x] > 0;
  }

  // Sweep.
  PruneResult res;
  for (std::size_t v = 0; v < n; ++v) {
    rep.removed_x1 += in_x1[v];
    rep.removed_x2 += in_x2[v];
    rep.removed_x3 += in_x3[v];
    if (in_x1[v]) ++rep.first_x1;
    else if (in_x2[v]) ++rep.first_x2;
    else if (in_x3[v]) ++rep.first_x3;
    else res.kept.push_back(static_cast<std::uint32_t>(v));
  }
  rep.retained = res.kept.size();
  rep.removed_union = n - rep.retained;

  // Expectations for a Poisson process of intensity 2^-d Delta on the torus.
  const double vol_i = ik.volume.value;
  rep.expected_points = std::ldexp(delta_param, -d) * domain.volume();
  const double k1 = std::floor(rep.degree_threshold - 1.0) + 1.0;
  rep.expected_x1 = rep.expected_points * poisson_upper_tail(delta_param, static_cast<std::uint64_t>(std::max(0.0, k1)));
  rep.expected_x2 = rep.expected_points * -std::expm1(-delta_param * vol_i);
  const double k3 = std::ceil(rep.codegree_threshold);
  rep.expected_s3 = rep.expected_points * std::ldexp(delta_param, d) *
                    poisson_upper_tail(ik.delta * delta_param, static_cast<std::uint64_t>(std::max(0.0, k3)));
  rep.bound_x1 = rep.expected_points * std::exp(-(std::pow(delta_param, 2.0 / 3.0) - 1.0) / 3.0);
  rep.bound_x2 = rep.expected_points / d;

  res.graph = induced_subgraph(graph, res.kept);
  res.report = rep;
  return res;
}

}  // namespace normpack::packing
