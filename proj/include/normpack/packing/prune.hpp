#pragma once

#include <cstdint>
#include <vector>

#include "normpack/packing/graph.hpp"
#include "normpack/packing/torus.hpp"
#include "normpack/volumetrics/ik.hpp"

namespace normpack::packing {

struct PruneOptions {
  volumetrics::ClassifierOptions classifier;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

/// Removal accounting. A point may match several rules; removed_* count each
/// rule's full set, first_* attribute each removed point to its first rule in
/// the order X1, X2, X3.
struct PruneReport {
  std::size_t total = 0;
  std::size_t removed_x1 = 0, removed_x2 = 0, removed_x3 = 0;
  std::size_t first_x1 = 0, first_x2 = 0, first_x3 = 0;
  std::size_t removed_union = 0;
  std::size_t retained = 0;
  std::size_t s3_pairs = 0;          // ordered pairs in S3
  std::size_t close_pairs = 0;       // unordered pairs with x - y in 2I
  std::size_t classified_pairs = 0;  // pairs that needed Monte Carlo classification
  std::size_t boundary_pairs = 0;    // ambiguous pairs, counted as inside 2I
  double degree_threshold = 0.0;     // |X cap (x + 2K)| (x included) must not exceed this
  double codegree_threshold = 0.0;
  // Expected sizes on the torus. x1 and x2 are exact Palm expectations,
  // s3 is the union bound E|X| 2^d Delta P[Poisson(delta Delta) >= c Delta].
  double expected_points = 0.0;
  double expected_x1 = 0.0;
  double expected_x2 = 0.0;
  double expected_s3 = 0.0;
  // Closed-form bounds of the same quantities as stated for large d.
  double bound_x1 = 0.0;  // E|X| exp(-(Delta^{2/3} - 1) / 3)
  double bound_x2 = 0.0;  // E|X| / d, valid when Delta <= Delta_K
};

struct PruneResult {
  PackingGraph graph;                // induced on retained vertices
  std::vector<std::uint32_t> kept;   // retained vertex ids of the input graph
  PruneReport report;
};

/// Removes X1 (|X cap (x + 2K)| > Delta + Delta^{2/3}), X2 (another point in
/// x + 2I) and X3 (endpoints of pairs with x - y not in 2I and codegree >=
/// codegree_coeff Delta). Membership z in 2I is decided as f(z/2) > delta with
/// the escalating classifier; boundary pairs count as inside. Decisions are
/// all taken on the unpruned set, then applied at once.
PruneResult prune(const PackingGraph& graph, const PointSet& points, const bodies::ConvexBody& body,
                  const volumetrics::IkProfile& ik, double delta_param, double codegree_coeff,
                  const TorusDomain& domain, const PruneOptions& opts);

/// Default codegree coefficient d^-9, floored at 1e-3.
double default_codegree_coeff(int d);

}  // namespace normpack::packing
