#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace normpack {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double norm1(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

inline Vec scaled(std::span<const double> a, double f) {
  Vec out(a.begin(), a.end());
  for (double& v : out) v *= f;
  return out;
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector u,
/// returned as d-1 rows of length d.
std::vector<Vec> orthogonal_complement(std::span<const double> u);

/// Solves the square system A x = b (row-major, n x n) by Gaussian elimination
/// with partial pivoting. Returns false when A is numerically singular.
bool solve_linear(std::vector<double> a, std::vector<double> b, std::span<double> x);

}  // namespace normpack
