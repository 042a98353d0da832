#include <algorithm>
#include <cmath>
#include <random>

#include "normpack/common/linalg.hpp"
#include "normpack/common/rng.hpp"

namespace normpack {

void random_direction(Rng& rng, std::span<double> out) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    double s = 0.0;
    for (double& v : out) {
      v = gauss(rng);
      s += v * v;
    }
    if (s > 1e-300) {
      const double inv = 1.0 / std::sqrt(s);
      for (double& v : out) v *= inv;
      return;
    }
  }
}

std::vector<Vec> orthogonal_complement(std::span<const double> u) {
  const std::size_t d = u.size();
  std::vector<Vec> basis;
  basis.reserve(d - 1);
  // Skip the standard basis vector most aligned with u.
  std::size_t skip = 0;
  for (std::size_t i = 1; i < d; ++i)
    if (std::abs(u[i]) > std::abs(u[skip])) skip = i;

  for (std::size_t k = 0; k < d; ++k) {
    if (k == skip) continue;
    Vec v(d, 0.0);
    v[k] = 1.0;
    // Two passes of modified Gram-Schmidt for numerical orthogonality.
    for (int pass = 0; pass < 2; ++pass) {
      const double pu = dot(v, u);
      for (std::size_t i = 0; i < d; ++i) v[i] -= pu * u[i];
      for (const Vec& b : basis) {
        const double pb = dot(v, b);
        for (std::size_t i = 0; i < d; ++i) v[i] -= pb * b[i];
      }
    }
    const double n = norm2(v);
    for (double& x : v) x /= n;
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve_linear(std::vector<double> a, std::vector<double> b, std::span<double> x) {
  const std::size_t n = b.size();
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return false;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-12 * scale) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
    x[i] = s / a[i * n + i];
  }
  return true;
}

}  // namespace normpack
