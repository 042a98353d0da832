#include "normpack/bodies/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace normpack::bodies {

struct ConvexBody::PolytopeData {
  std::size_t facets = 0;
  std::vector<double> normals;  // facets x dim, unit rows
  std::vector<double> offsets;  // canonical (scale 1)
  std::vector<double> box;      // canonical half widths
  double circumradius = 0.0;
};

namespace {

constexpr double kSymmetryTol = 1e-9;

double lp_norm(std::span<const double> x, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  if (p == 1.0) return norm1(x);
  if (p == 2.0) return norm2(x);
  // Factor out the max entry so large or tiny inputs do not overflow.
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long double r = 1.0L;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<long double>(n - k + i) / i;
    if (r > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(std::llround(static_cast<double>(r)));
}

// Max Euclidean norm over vertices, by enumerating d-subsets of facets.
std::optional<double> vertex_circumradius(const std::vector<double>& normals,
                                          const std::vector<double>& offsets, int d) {
  const int m = static_cast<int>(offsets.size());
  if (binomial_capped(m, d, 200000) > 200000) return std::nullopt;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  double best = 0.0;
  bool found = false;
  std::vector<double> x(d);
  for (;;) {
    std::vector<double> a(static_cast<std::size_t>(d) * d), b(d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) a[r * d + c] = normals[idx[r] * d + c];
      b[r] = offsets[idx[r]];
    }
    if (solve_linear(a, b, x)) {
      bool feasible = true;
      for (int f = 0; f < m && feasible; ++f) {
        double s = 0.0;
        for (int c = 0; c < d; ++c) s += normals[f * d + c] * x[c];
        feasible = s <= offsets[f] * (1.0 + 1e-9) + 1e-12;
      }
      if (feasible) {
        best = std::max(best, norm2(x));
        found = true;
      }
    }
    int i = d - 1;
    while (i >= 0 && idx[i] == m - d + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (!found) return std::nullopt;
  return best;
}

}  // namespace

double log_unit_ball_volume(int k) {
  if (k < 0) throw std::invalid_argument("ball dimension must be nonnegative");
  return 0.5 * k * std::log(std::numbers::pi) - std::lgamma(0.5 * k + 1.0);
}

double unit_ball_volume(int k) { return std::exp(log_unit_ball_volume(k)); }

double regular_simplex_volume(int dim) {
  return std::sqrt(static_cast<double>(dim + 1)) / std::tgamma(dim + 1.0);
}

void simplex_embed(std::span<const double> x, std::span<double> out) {
  const std::size_t d = x.size();
  // out[j] = sum_{k > j} c_k - j c_j, with c_k = x_k / sqrt(k (k+1)), k = 1..d.
  double tail = 0.0;
  for (std::size_t j = d + 1; j-- > 0;) {
    double own = 0.0;
    if (j >= 1) {
      const double k = static_cast<double>(j);
      const double c = x[j - 1] / std::sqrt(k * (k + 1.0));
      own = k * c;
      out[j] = tail - own;
      tail += c;
    } else {
      out[j] = tail;
    }
  }
}

Vec simplex_embed(std::span<const double> x) {
  Vec out(x.size() + 1);
  simplex_embed(x, out);
  return out;
}

void validate_symmetric(const HPolytopeSpec& spec, int dim) {
  if (dim < 1) throw std::invalid_argument("polytope dimension must be positive");
  if (spec.normals.size() != spec.offsets.size())
    throw std::invalid_argument("polytope: normals and offsets differ in length");
  if (spec.normals.empty()) throw std::invalid_argument("polytope: no facets");
  const std::size_t m = spec.normals.size();
  std::vector<Vec> unit(m);
  std::vector<double> off(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (spec.normals[i].size() != static_cast<std::size_t>(dim))
      throw std::invalid_argument("polytope: facet normal has wrong dimension");
    const double n = norm2(spec.normals[i]);
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("polytope: zero or non-finite normal");
    if (!(spec.offsets[i] > 0.0) || !std::isfinite(spec.offsets[i]))
      throw std::invalid_argument("polytope: offsets must be positive (origin interior)");
    unit[i] = scaled(spec.normals[i], 1.0 / n);
    off[i] = spec.offsets[i] / n;
  }
  for (std::size_t i = 0; i < m; ++i) {
    bool paired = false;
    for (std::size_t j = 0; j < m && !paired; ++j) {
      double dev = 0.0;
      for (int c = 0; c < dim; ++c) dev = std::max(dev, std::abs(unit[i][c] + unit[j][c]));
      paired = dev < kSymmetryTol && std::abs(off[i] - off[j]) < kSymmetryTol * std::max(1.0, off[i]);
    }
    if (!paired) {
      std::ostringstream msg;
      msg << "polytope: facet " << i << " has no centrally symmetric partner";
      throw std::invalid_argument(msg.str());
    }
  }
  // Symmetric facets bound a body iff the normals span R^d.
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < m && static_cast<int>(basis.size()) < dim; ++i) {
    Vec v = unit[i];
    for (const Vec& b : basis) {
      const double c = dot(v, b);
      for (int k = 0; k < dim; ++k) v[k] -= c * b[k];
    }
    const double n = norm2(v);
    if (n > 1e-9) basis.push_back(scaled(v, 1.0 / n));
  }
  if (static_cast<int>(basis.size()) < dim) throw std::invalid_argument("polytope: facets do not bound a body");
}

ConvexBody ConvexBody::lp_ball(int dim, double p, double scale) {
  if (dim < 1) throw std::invalid_argument("body dimension must be positive");
  if (!(p >= 1.0)) throw std::invalid_argument("lp ball requires p in [1, inf]");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("scale must be positive");
  ConvexBody b;
  b.kind_ = BodyKind::LpBall;
  b.dim_ = dim;
  b.p_ = p;
  b.q_ = conjugate_exponent(p);
  b.scale_ = scale;
  b.finish_geometry();
  return b;
}

ConvexBody ConvexBody::simplex_difference(int dim, double scale) {
  if (dim < 1) throw std::invalid_argument("body dimension must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("scale must be positive");
  ConvexBody b;
  b.kind_ = BodyKind::SimplexDifference;
  b.dim_ = dim;
  b.p_ = std::numeric_limits<double>::quiet_NaN();
  b.scale_ = scale;
  b.finish_geometry();
  return b;
}

ConvexBody ConvexBody::hpolytope(const HPolytopeSpec& spec, int dim, double scale) {
  validate_symmetric(spec, dim);
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("scale must be positive");
  auto data = std::make_shared<PolytopeData>();
  data->facets = spec.normals.size();
  for (std::size_t i = 0; i < data->facets; ++i) {
    const double n = norm2(spec.normals[i]);
    for (double v : spec.normals[i]) data->normals.push_back(v / n);
    data->offsets.push_back(spec.offsets[i] / n);
  }
  data->box.resize(dim);
  Vec e(dim, 0.0);
  for (int k = 0; k < dim; ++k) {
    e.assign(dim, 0.0);
    e[k] = 1.0;
    auto h = lp_maximize(data->normals, data->offsets, dim, e);
    if (!h) throw std::invalid_argument("polytope: facet set is unbounded");
    data->box[k] = *h;
  }
  if (auto r = vertex_circumradius(data->normals, data->offsets, dim)) {
    data->circumradius = *r;
  } else {
    // Certified bound from the bounding box corner.
    data->circumradius = norm2(data->box);
  }

  ConvexBody b;
  b.kind_ = BodyKind::HPolytope;
  b.dim_ = dim;
  b.p_ = std::numeric_limits<double>::quiet_NaN();
  b.scale_ = scale;
  b.poly_ = std::move(data);
  b.finish_geometry();
  return b;
}

void ConvexBody::finish_geometry() {
  box_.assign(dim_, scale_);
  switch (kind_) {
    case BodyKind::LpBall:
      circumradius_ = p_ >= 2.0 ? scale_ * std::pow(static_cast<double>(dim_), 0.5 - (std::isinf(p_) ? 0.0 : 1.0 / p_))
                                : scale_;
      break;
    case BodyKind::SimplexDifference: {
      Vec e(dim_, 0.0);
      for (int k = 0; k < dim_; ++k) {
        std::fill(e.begin(), e.end(), 0.0);
        e[k] = 1.0;
        box_[k] = support(e);
      }
      circumradius_ = scale_ / std::sqrt(2.0);
      break;
    }
    case BodyKind::HPolytope:
      for (int k = 0; k < dim_; ++k) box_[k] = scale_ * poly_->box[k];
      circumradius_ = scale_ * poly_->circumradius;
      break;
  }
}

std::string ConvexBody::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case BodyKind::LpBall:
      os << "lp(p=" << (std::isinf(p_) ? std::string("inf") : std::to_string(p_)) << ",d=" << dim_
         << ",scale=" << scale_ << ")";
      break;
    case BodyKind::HPolytope:
      os << "hpoly(facets=" << poly_->facets << ",d=" << dim_ << ",scale=" << scale_ << ")";
      break;
    case BodyKind::SimplexDifference:
      os << "simplex_diff(d=" << dim_ << ",scale=" << scale_ << ")";
      break;
  }
  return os.str();
}

void ConvexBody::check_dim(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) throw std::invalid_argument("dimension mismatch");
}

double ConvexBody::gauge(std::span<const double> x) const {
  check_dim(x);
  for (double v : x)
    if (std::isnan(v)) throw std::invalid_argument("gauge: NaN input");
  switch (kind_) {
    case BodyKind::LpBall:
      return lp_norm(x, p_) / scale_;
    case BodyKind::HPolytope: {
      const std::size_t d = x.size();
      double g = 0.0;
      for (std::size_t i = 0; i < poly_->facets; ++i) {
        const double* a = poly_->normals.data() + i * d;
        double s = 0.0;
        for (std::size_t c = 0; c < d; ++c) s += a[c] * x[c];
        g = std::max(g, s / poly_->offsets[i]);
      }
      return g / scale_;
    }
    case BodyKind::SimplexDifference: {
      double buf[64];
      std::vector<double> heap;
      std::span<double> y;
      if (x.size() + 1 <= 64) {
        y = std::span<double>(buf, x.size() + 1);
      } else {
        heap.resize(x.size() + 1);
        y = heap;
      }
      simplex_embed(x, y);
      return norm1(y) / scale_;
    }
  }
  return 0.0;
}

double ConvexBody::support(std::span<const double> u) const {
  check_dim(u);
  switch (kind_) {
    case BodyKind::LpBall:
      return scale_ * lp_norm(u, q_);
    case BodyKind::HPolytope: {
      auto h = lp_maximize(poly_->normals, poly_->offsets, dim_, u);
      if (!h) throw std::logic_error("support: bounded polytope reported unbounded LP");
      return scale_ * *h;
    }
    case BodyKind::SimplexDifference: {
      const Vec y = simplex_embed(u);
      const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
      return scale_ * 0.5 * (*hi - *lo);
    }
  }
  return 0.0;
}

double ConvexBody::box_volume() const {
  double v = 1.0;
  for (double w : box_) v *= 2.0 * w;
  return v;
}

double ConvexBody::closed_form_volume() const {
  const double d = dim_;
  switch (kind_) {
    case BodyKind::LpBall: {
      if (std::isinf(p_)) return std::pow(2.0 * scale_, d);
      const double logv = d * std::log(2.0) + d * std::lgamma(1.0 + 1.0 / p_) - std::lgamma(1.0 + d / p_) +
                          d * std::log(scale_);
      return std::exp(logv);
    }
    case BodyKind::SimplexDifference: {
      // Rogers-Shephard equality for simplices: vol(T - T) = C(2d, d) vol(T).
      const double log_binom = std::lgamma(2.0 * d + 1.0) - 2.0 * std::lgamma(d + 1.0);
      const double logv = log_binom + std::log(regular_simplex_volume(dim_)) - d * std::log(2.0) +
                          d * std::log(scale_);
      return std::exp(logv);
    }
    case BodyKind::HPolytope:
      break;
  }
  throw VolumeUnavailable("no closed-form volume for a general H-polytope; use mc_volume");
}

double ConvexBody::volume() const {
  if (has_closed_form_volume()) return closed_form_volume();
  if (estimated_volume_) return *estimated_volume_;
  throw VolumeUnavailable("volume of " + describe() + " unknown; estimate it with mc_volume first");
}

ConvexBody ConvexBody::scaled_by(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw std::invalid_argument("scale factor must be positive");
  ConvexBody b = *this;
  b.scale_ = scale_ * factor;
  if (b.estimated_volume_) *b.estimated_volume_ *= std::pow(factor, dim_);
  b.finish_geometry();
  return b;
}

ConvexBody ConvexBody::with_estimated_volume(double volume, double rel_error) const {
  if (!(volume > 0.0)) throw std::invalid_argument("estimated volume must be positive");
  ConvexBody b = *this;
  b.estimated_volume_ = volume;
  b.volume_rel_error_ = rel_error;
  return b;
}

const std::vector<double>& ConvexBody::facet_normals() const {
  if (!poly_) throw std::logic_error("facet_normals: not a polytope");
  return poly_->normals;
}

const std::vector<double>& ConvexBody::facet_offsets() const {
  if (!poly_) throw std::logic_error("facet_offsets: not a polytope");
  return poly_->offsets;
}

bool ConvexBody::line_meets(std::span<const double> p, std::span<const double> u) const {
  check_dim(p);
  check_dim(u);
  const std::size_t d = p.size();
  if (kind_ == BodyKind::HPolytope) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly_->facets; ++i) {
      const double* a = poly_->normals.data() + i * d;
      double au = 0.0, ap = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        au += a[c] * u[c];
        ap += a[c] * p[c];
      }
      const double slack = scale_ * poly_->offsets[i] - ap;
      if (std::abs(au) < 1e-15) {
        if (slack < 0.0) return false;
      } else if (au > 0.0) {
        hi = std::min(hi, slack / au);
      } else {
        lo = std::max(lo, slack / au);
      }
    }
    return lo <= hi;
  }

  std::vector<double> x(d);
  auto phi = [&](double t) {
    for (std::size_t c = 0; c < d; ++c) x[c] = p[c] + t * u[c];
    return gauge(x);
  };
  const double uu = dot(u, u);
  const double center = -dot(p, u) / uu;
  const double half = circumradius_ * (1.0 + 1e-9) / std::sqrt(uu);
  double a = center - half, b = center + half;
  const double phi_a = phi(a), phi_b = phi(b);
  if (phi_a < 1.0 || phi_b < 1.0)
    throw std::logic_error("line_meets: search interval does not bracket the body");
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double e = a + kInvPhi * (b - a);
  double fc = phi(c), fe = phi(e);
  const double tol = 1e-12 * (half + std::abs(center));
  while (b - a > tol) {
    if (fc <= 1.0 || fe <= 1.0) return true;
    if (fc < fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - kInvPhi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + kInvPhi * (b - a);
      fe = phi(e);
    }
  }
  return std::min(fc, fe) <= 1.0;
}

std::optional<double> lp_maximize(std::span<const double> a, std::span<const double> b, int dim,
                                  std::span<const double> c) {
  // Free variables split as x = x+ - x-, slack basis is feasible since b > 0.
  const std::size_t m = b.size();
  const std::size_t d = static_cast<std::size_t>(dim);
  const std::size_t n = 2 * d + m;
  const std::size_t w = n + 1;
  std::vector<double> t((m + 1) * w, 0.0);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      t[i * w + j] = a[i * d + j];
      t[i * w + d + j] = -a[i * d + j];
    }
    t[i * w + 2 * d + i] = 1.0;
    t[i * w + n] = b[i];
    basis[i] = 2 * d + i;
  }
  for (std::size_t j = 0; j < d; ++j) {
    t[m * w + j] = -c[j];
    t[m * w + d + j] = c[j];
  }
  constexpr double eps = 1e-12;
  const std::size_t max_iter = 50 * (n + m) + 1000;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (t[m * w + j] < -eps) {
        enter = j;
        break;
      }
    }
    if (enter == n) return t[m * w + n];
    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double coef = t[i * w + enter];
      if (coef > eps) {
        const double ratio = t[i * w + n] / coef;
        if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && leave < m && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) return std::nullopt;
    const double piv = t[leave * w + enter];
    for (std::size_t j = 0; j < w; ++j) t[leave * w + j] /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t[i * w + enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < w; ++j) t[i * w + j] -= f * t[leave * w + j];
    }
    basis[leave] = enter;
  }
  throw std::runtime_error("lp_maximize: iteration limit reached");
}

UniformSampler::UniformSampler(const ConvexBody& body, double efficiency_floor)
    : body_(&body), floor_(efficiency_floor) {}

void UniformSampler::draw(Rng& rng, std::span<double> out) {
  const auto box = body_->box_half_widths();
  for (;;) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = uniform(rng, -box[i], box[i]);
    ++attempts_;
    if (body_->gauge(out) <= 1.0) {
      ++accepted_;
      return;
    }
    if (attempts_ >= 20000 && static_cast<double>(accepted_) < floor_ * static_cast<double>(attempts_)) {
      std::ostringstream msg;
      msg << "rejection sampling of " << body_->describe() << " accepts " << accepted_ << "/" << attempts_
          << " box samples, below the floor " << floor_ << "; this body/dimension is too large for box rejection";
      throw SamplingInefficient(msg.str());
    }
  }
}

std::vector<Vec> sample_uniform(const ConvexBody& body, Rng& rng, std::size_t n, double efficiency_floor) {
  if (n < 1) throw std::invalid_argument("sample_uniform: n must be >= 1");
  UniformSampler sampler(body, efficiency_floor);
  std::vector<Vec> out(n, Vec(body.dim()));
  for (auto& x : out) sampler.draw(rng, x);
  return out;
}

ConvexBody normalize_to_unit_volume(const ConvexBody& body) {
  const double v = body.volume();
  const double factor = std::pow(v, -1.0 / body.dim());
  ConvexBody out = body.scaled_by(factor);
  if (!body.has_closed_form_volume()) out = out.with_estimated_volume(1.0, body.volume_rel_error());
  return out;
}

}  // namespace normpack::bodies
