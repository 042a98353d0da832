#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "normpack/packing/poisson.hpp"

namespace normpack::packing {

/// Uniform cell grid over the torus. Points are bucketed by cell and a query
/// scans the (2k+1)^d block of cells around the query cell, k = ceil(r / side),
/// visiting each distinct cell once even when the block wraps.
class SpatialHash {
 public:
  SpatialHash(const PointSet& points, const TorusDomain& domain, double min_cell_side);

  double cell_side() const { return side_; }
  int cells_per_axis() const { return m_; }

  /// Calls fn(j) for every point j whose cell lies within the scan block of
  /// `center` for radius r. Candidates are a superset of the points within
  /// Euclidean distance r; callers apply the exact test.
  template <class Fn>
  void for_each_candidate(std::span<const double> center, double radius, Fn&& fn) const {
    const std::vector<std::uint64_t> cells = block(center, radius);
    for (std::uint64_t id : cells) {
      auto it = std::lower_bound(cell_ids_.begin(), cell_ids_.end(), id);
      if (it == cell_ids_.end() || *it != id) continue;
      const std::size_t c = static_cast<std::size_t>(it - cell_ids_.begin());
      for (std::uint32_t k = starts_[c]; k < starts_[c + 1]; ++k) fn(order_[k]);
    }
  }

 private:
  std::vector<std::uint64_t> block(std::span<const double> center, double radius) const;
  std::uint64_t cell_of(std::span<const double> x, std::vector<int>& coords) const;

  TorusDomain domain_;
  int m_ = 1;
  double side_ = 0.0;
  std::vector<std::uint64_t> cell_ids_;  // sorted distinct occupied cells
  std::vector<std::uint32_t> starts_;    // cell c owns order_[starts_[c], starts_[c+1])
  std::vector<std::uint32_t> order_;
};

}  // namespace normpack::packing
