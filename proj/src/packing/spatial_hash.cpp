#include "normpack/packing/spatial_hash.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace normpack::packing {

SpatialHash::SpatialHash(const PointSet& points, const TorusDomain& domain, double min_cell_side)
    : domain_(domain) {
  if (points.d != domain.d) throw std::invalid_argument("point set and torus dimensions differ");
  if (!(min_cell_side > 0.0)) throw std::invalid_argument("cell side must be positive");
  // Cell ids are mixed-radix integers, so m^d must fit in 62 bits.
  const double max_m = std::floor(std::pow(2.0, 62.0 / domain.d));
  double m = std::floor(domain.L / min_cell_side);
  m = std::clamp(m, 1.0, max_m);
  m_ = static_cast<int>(m);
  side_ = domain.L / m_;

  const std::size_t n = points.size();
  std::vector<std::uint64_t> ids(n);
  std::vector<int> coords(domain.d);
  for (std::size_t i = 0; i < n; ++i) ids[i] = cell_of(points.point(i), coords);
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0u);
  std::stable_sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) { return ids[a] < ids[b]; });
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t id = ids[order_[k]];
    if (cell_ids_.empty() || cell_ids_.back() != id) {
      cell_ids_.push_back(id);
      starts_.push_back(static_cast<std::uint32_t>(k));
    }
  }
  starts_.push_back(static_cast<std::uint32_t>(n));
}

std::uint64_t SpatialHash::cell_of(std::span<const double> x, std::vector<int>& coords) const {
  std::uint64_t id = 0;
  for (int k = domain_.d - 1; k >= 0; --k) {
    double v = x[k] - domain_.L * std::floor(x[k] / domain_.L);
    int c = static_cast<int>(std::floor(v / side_));
    c = std::clamp(c, 0, m_ - 1);
    coords[k] = c;
    id = id * static_cast<std::uint64_t>(m_) + static_cast<std::uint64_t>(c);
  }
  return id;
}

std::vector<std::uint64_t> SpatialHash::block(std::span<const double> center, double radius) const {
  const int d = domain_.d;
  std::vector<int> base(d);
  cell_of(center, base);
  const int reach = std::max(1, static_cast<int>(std::ceil(radius / side_ - 1e-12)));
  const int span_cells = std::min(2 * reach + 1, m_);
  // Offsets per axis, wrapped and deduplicated.
  std::vector<std::vector<int>> axis(d);
  for (int k = 0; k < d; ++k) {
    if (span_cells == m_) {
      axis[k].resize(m_);
      std::iota(axis[k].begin(), axis[k].end(), 0);
    } else {
      for (int o = -reach; o <= reach; ++o) axis[k].push_back(((base[k] + o) % m_ + m_) % m_);
    }
  }
  std::vector<std::uint64_t> out;
  std::vector<int> idx(d, 0);
  for (;;) {
    std::uint64_t id = 0;
    for (int k = d - 1; k >= 0; --k) id = id * static_cast<std::uint64_t>(m_) + static_cast<std::uint64_t>(axis[k][idx[k]]);
    out.push_back(id);
    int k = 0;
    while (k < d && ++idx[k] == static_cast<int>(axis[k].size())) idx[k++] = 0;
    if (k == d) break;
  }
  return out;
}

}  // namespace normpack::packing
