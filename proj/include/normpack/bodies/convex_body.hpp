#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "normpack/common/linalg.hpp"
#include "normpack/common/rng.hpp"

namespace normpack::bodies {

/// Raised when a body has no closed-form (or previously estimated) volume.
class VolumeUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the uniform sampler when box rejection accepts too rarely.
class SamplingInefficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Facet description {x : a_i . x <= b_i}. Normals need not be unit length;
/// they are normalized on construction. The facet set must be centrally
/// symmetric: every (a, b) has a partner (-a, b).
struct HPolytopeSpec {
  std::vector<Vec> normals;
  std::vector<double> offsets;
};

/// Rejects asymmetric, degenerate or unbounded facet sets.
void validate_symmetric(const HPolytopeSpec& spec, int dim);

enum class BodyKind { LpBall, HPolytope, SimplexDifference };

/// A centrally symmetric convex body K in R^d described by its gauge
/// (Minkowski functional) and support function.
///
/// Built-ins:
///  - LpBall(p): scale * {x : ||x||_p <= 1}, p in [1, inf].
///  - HPolytope: scale * {x : a_i . x <= b_i}.
///  - SimplexDifference(d): scale * (T - T)/2 for the regular d-simplex T of
///    side sqrt(2), realized as the cross-polytope of R^{d+1} cut by the
///    hyperplane sum(x) = 0 and identified with R^d through an orthonormal
///    basis of that hyperplane (see simplex_embed).
///
/// Values are immutable and cheap to copy; all queries are thread-safe.
class ConvexBody {
 public:
  static ConvexBody lp_ball(int dim, double p, double scale = 1.0);
  static ConvexBody cube(int dim, double half_side) { return lp_ball(dim, kInfinity, half_side); }
  static ConvexBody hpolytope(const HPolytopeSpec& spec, int dim, double scale = 1.0);
  static ConvexBody simplex_difference(int dim, double scale = 1.0);

  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  BodyKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double scale() const { return scale_; }
  /// Exponent of an LpBall (infinity for the cube); NaN for other kinds.
  double p() const { return p_; }
  std::string describe() const;

  /// ||x||_K = inf{l >= 0 : x in l K}.
  double gauge(std::span<const double> x) const;
  /// h_K(u) = sup_{x in K} x . u.
  double support(std::span<const double> u) const;

  /// R with K contained in the Euclidean ball of radius R.
  double circumradius() const { return circumradius_; }
  /// Half widths h_K(e_i) of the axis-aligned bounding box [-w, w].
  std::span<const double> box_half_widths() const { return box_; }
  double box_volume() const;

  bool has_closed_form_volume() const { return kind_ != BodyKind::HPolytope; }
  /// Exact volume for LpBall and SimplexDifference.
  double closed_form_volume() const;
  /// Closed form when available, else a volume previously attached by
  /// with_estimated_volume (e.g. after Monte Carlo normalization).
  double volume() const;
  bool has_volume() const { return has_closed_form_volume() || estimated_volume_.has_value(); }
  /// Relative standard error of volume() (0 for closed forms).
  double volume_rel_error() const { return has_closed_form_volume() ? 0.0 : volume_rel_error_; }

  ConvexBody scaled_by(double factor) const;
  ConvexBody with_estimated_volume(double volume, double rel_error) const;

  /// Whether the line {p + t u : t real} meets K. Exact for polytopes; for
  /// other bodies minimizes the convex map t -> gauge(p + t u) by a bracketed
  /// golden-section search over [-R, R].
  bool line_meets(std::span<const double> p, std::span<const double> u) const;

  /// Canonical facet data (unit normals, unscaled offsets) of an HPolytope.
  const std::vector<double>& facet_normals() const;
  const std::vector<double>& facet_offsets() const;

 private:
  struct PolytopeData;
  ConvexBody() = default;
  void finish_geometry();
  void check_dim(std::span<const double> x) const;

  BodyKind kind_ = BodyKind::LpBall;
  int dim_ = 0;
  double scale_ = 1.0;
  double p_ = 2.0;
  double q_ = 2.0;
  std::shared_ptr<const PolytopeData> poly_;
  std::vector<double> box_;
  double circumradius_ = 0.0;
  std::optional<double> estimated_volume_;
  double volume_rel_error_ = 0.0;
};

/// Isometric embedding of R^d onto the hyperplane sum(y) = 0 of R^{d+1}
/// (Helmert basis). Runs in O(d).
void simplex_embed(std::span<const double> x, std::span<double> out);
Vec simplex_embed(std::span<const double> x);

/// Volume of the regular d-simplex of side sqrt(2): sqrt(d+1)/d!.
double regular_simplex_volume(int dim);

/// Volume of the unit Euclidean ball in R^k, with gamma_0 = 1.
double unit_ball_volume(int k);
double log_unit_ball_volume(int k);

/// Maximizes c . x over {x : A x <= b} (A row-major m x d, b > 0) by the
/// simplex method with Bland's rule. Returns nullopt if unbounded.
std::optional<double> lp_maximize(std::span<const double> a, std::span<const double> b, int dim,
                                  std::span<const double> c);

/// Draws points uniformly from K by rejection from the bounding box.
class UniformSampler {
 public:
  explicit UniformSampler(const ConvexBody& body, double efficiency_floor = 1e-5);

  void draw(Rng& rng, std::span<double> out);
  std::size_t attempts() const { return attempts_; }
  std::size_t accepted() const { return accepted_; }

 private:
  const ConvexBody* body_;
  double floor_;
  std::size_t attempts_ = 0;
  std::size_t accepted_ = 0;
};

std::vector<Vec> sample_uniform(const ConvexBody& body, Rng& rng, std::size_t n,
                                double efficiency_floor = 1e-5);

/// Rescales the body to unit volume. Bodies without a closed form must carry
/// an estimated volume (see volumetrics::normalize_with_mc).
ConvexBody normalize_to_unit_volume(const ConvexBody& body);

}  // namespace normpack::bodies
