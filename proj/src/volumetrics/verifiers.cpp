#include "normpack/volumetrics/verifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace normpack::volumetrics {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Violation:
      return "violation";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

void require_unit_volume(const ConvexBody& body, const char* who) {
  const double v = body.volume();
  const double tol = std::max(1e-9, 4.0 * body.volume_rel_error());
  if (std::abs(v - 1.0) > tol) throw std::invalid_argument(std::string(who) + ": body must have unit volume");
}

struct DirectionalSupport {
  double value;
  double sigma;
};

DirectionalSupport projection_support(const ConvexBody& body, std::span<const double> u, std::uint64_t samples,
                                      std::uint64_t seed) {
  const McEstimate e = proj_body_support(body, u, {samples, seed, 1});
  return {e.value, e.std_error};
}

double binomial(int n, int k) { return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0))); }

}  // namespace

// ---------------------------------------------------------------------------

SchmuckenschlagerReport check_schmuckenschlager(const ConvexBody& body, double delta, std::uint64_t trials,
                                                double slack, std::uint64_t seed, const VerifyOptions& opts) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("check_schmuckenschlager: delta must lie in (0, 1)");
  require_unit_volume(body, "check_schmuckenschlager");
  const std::size_t d = static_cast<std::size_t>(body.dim());
  const double log_inv = std::log(1.0 / delta);

  SchmuckenschlagerReport rep;
  rep.delta = delta;
  rep.slack = slack;
  rep.seed = seed;
  rep.outer_trials = trials;
  rep.inner_trials = trials;
  {
    Vec e(d, 0.0);
    e[0] = 1.0;
    rep.analytic_projection = analytic_projection_support(body, e).has_value();
  }

  struct Outcome {
    bool applicable = false, boundary = false, violation = false;
    double ratio = 0.0;
  };
  std::vector<Outcome> outer(trials), inner(trials);
  ClassifierOptions copts = opts.classifier;
  copts.workers = 1;

  const std::uint64_t outer_seed = derive_seed(seed, "schmuck-outer");
  parallel_for(trials, opts.workers, [&](std::size_t i, unsigned) {
    const std::uint64_t s = derive_seed(outer_seed, static_cast<std::uint64_t>(i));
    Rng rng = make_rng(s);
    Vec u(d), x(d);
    random_direction(rng, u);
    const auto h = projection_support(body, u, opts.proj_samples, derive_seed(s, "proj"));
    const double t_edge = 2.0 / body.gauge(u);
    const double t = uniform01(rng) * std::min(t_edge, 1.5 * log_inv / h.value);
    for (std::size_t k = 0; k < d; ++k) x[k] = t * u[k];
    const auto cls = classify_overlap(body, x, delta, derive_seed(s, "f"), copts);
    Outcome& o = outer[i];
    if (cls.verdict == OverlapVerdict::Below) return;
    o.applicable = true;
    o.boundary = cls.verdict == OverlapVerdict::Boundary;
    o.ratio = t * h.value / log_inv;
    o.violation = t * (h.value - 3.0 * h.sigma) > log_inv * (1.0 + slack);
  });

  const std::uint64_t inner_seed = derive_seed(seed, "schmuck-inner");
  parallel_for(trials, opts.workers, [&](std::size_t i, unsigned) {
    const std::uint64_t s = derive_seed(inner_seed, static_cast<std::uint64_t>(i));
    Rng rng = make_rng(s);
    Vec u(d), x(d);
    random_direction(rng, u);
    const auto h = projection_support(body, u, opts.proj_samples, derive_seed(s, "proj"));
    // Upper confidence value of h keeps x inside the scaled polar body.
    const double t = uniform01(rng) * (1.0 - delta) * (1.0 - slack) / (h.value + 3.0 * h.sigma);
    for (std::size_t k = 0; k < d; ++k) x[k] = t * u[k];
    const auto cls = classify_overlap(body, x, delta, derive_seed(s, "f"), copts);
    inner[i].boundary = cls.verdict == OverlapVerdict::Boundary;
    inner[i].violation = cls.verdict == OverlapVerdict::Below;
  });

  for (const auto& o : outer) {
    if (!o.applicable) continue;
    ++rep.outer_applicable;
    rep.outer_boundary += o.boundary;
    rep.outer_violations += o.violation;
    rep.outer_max_ratio = std::max(rep.outer_max_ratio, o.ratio);
  }
  for (const auto& o : inner) {
    rep.inner_boundary += o.boundary;
    rep.inner_violations += o.violation;
  }
  return rep;
}

std::vector<CheckRecord> SchmuckenschlagerReport::records(const ConvexBody& body) const {
  CheckRecord outer;
  outer.check = "schmuck_outer";
  outer.body = body.describe();
  outer.d = body.dim();
  outer.params = {{"delta", delta},
                  {"slack", slack},
                  {"applicable", outer_applicable},
                  {"boundary", outer_boundary},
                  {"analytic_projection", analytic_projection}};
  outer.value = outer_max_ratio;
  outer.bound = 1.0 + slack;
  outer.violations = outer_violations;
  outer.trials = outer_trials;
  outer.seed = seed;
  if (outer_applicable == 0) outer.status = "inconclusive";

  CheckRecord inner = outer;
  inner.check = "schmuck_inner";
  inner.params = {{"delta", delta}, {"slack", slack}, {"boundary", inner_boundary},
                  {"analytic_projection", analytic_projection}};
  inner.value = static_cast<double>(inner_trials - inner_violations);
  inner.bound = static_cast<double>(inner_trials);
  inner.violations = inner_violations;
  inner.trials = inner_trials;
  inner.status = "ok";
  return {outer, inner};
}

// ---------------------------------------------------------------------------

LogConcavityReport check_logconcavity(const ConvexBody& body, std::uint64_t rays, std::uint64_t directions,
                                      std::uint64_t seed, const LogConcavityOptions& opts) {
  if (rays < 1) throw std::invalid_argument("check_logconcavity: rays must be >= 1");
  const std::size_t d = static_cast<std::size_t>(body.dim());
  const double vol = body.volume();
  LogConcavityReport rep;
  rep.triples = rays;
  rep.directions = directions;
  rep.slope_tolerance = opts.slope_tolerance;
  rep.seed = seed;

  auto f_at = [&](std::span<const double> y, double t, std::uint64_t n, std::uint64_t s) {
    Vec x(y.begin(), y.end());
    for (double& v : x) v *= t;
    return intersection_volume(body, x, {n, s, 1});
  };

  std::vector<double> sigmas(rays);
  const std::uint64_t ray_seed = derive_seed(seed, "logconcave-rays");
  parallel_for(rays, opts.workers, [&](std::size_t i, unsigned) {
    const std::uint64_t s = derive_seed(ray_seed, static_cast<std::uint64_t>(i));
    Rng rng = make_rng(s);
    Vec y(d);
    random_direction(rng, y);
    const double t_edge = 2.0 / body.gauge(y);
    double t1 = uniform01(rng) * 0.95 * t_edge;
    double t2 = uniform01(rng) * 0.95 * t_edge;
    if (t1 > t2) std::swap(t1, t2);
    const double lam = uniform01(rng);
    const double tm = lam * t1 + (1.0 - lam) * t2;
    // Common random numbers: one uniform sample of K serves all three points.
    const std::uint64_t n = opts.samples_per_eval;
    Vec x1(y), x2(y), xm(y), z(d);
    for (std::size_t k = 0; k < d; ++k) {
      x1[k] *= t1;
      x2[k] *= t2;
      xm[k] *= tm;
    }
    bodies::UniformSampler sampler(body);
    Rng draw = make_rng(derive_seed(s, "triple"));
    auto inside = [&](std::span<const double> p, std::span<const double> x) {
      for (std::size_t k = 0; k < d; ++k) z[k] = p[k] - x[k];
      return body.gauge(z) <= 1.0;
    };
    Vec p(d);
    double c1 = 0, c2 = 0, cm = 0, c12 = 0, c1m = 0, c2m = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      sampler.draw(draw, p);
      const bool a = inside(p, x1), b = inside(p, x2), m = inside(p, xm);
      c1 += a;
      c2 += b;
      cm += m;
      c12 += a && b;
      c1m += a && m;
      c2m += b && m;
    }
    const double nn = static_cast<double>(n);
    const double p1 = c1 / nn, p2 = c2 / nn, pm = cm / nn;
    double rhs = 0.0, var = 0.0;
    if (p1 > 0.0 && p2 > 0.0) {
      rhs = std::pow(p1, lam) * std::pow(p2, 1.0 - lam);
      // Delta method on pm - p1^lam p2^(1-lam) with the indicator covariance.
      const double g1 = -lam * rhs / p1, g2 = -(1.0 - lam) * rhs / p2;
      const double s11 = p1 * (1 - p1), s22 = p2 * (1 - p2), smm = pm * (1 - pm);
      const double s12 = c12 / nn - p1 * p2, s1m = c1m / nn - p1 * pm, s2m = c2m / nn - p2 * pm;
      var = (g1 * g1 * s11 + g2 * g2 * s22 + smm + 2 * g1 * g2 * s12 + 2 * g1 * s1m + 2 * g2 * s2m) / nn;
    } else {
      var = pm * (1 - pm) / nn;
    }
    // Floor by one-hit resolution so sparse estimates are not over-trusted.
    const double sigma = vol * std::max(std::sqrt(std::max(var, 0.0)), 1.0 / nn);
    const double fm_value = vol * pm;
    rhs *= vol;
    sigmas[i] = (fm_value - rhs) / sigma;
  });
  rep.worst_sigma = std::numeric_limits<double>::infinity();
  for (double z : sigmas) {
    rep.worst_sigma = std::min(rep.worst_sigma, z);
    if (z < -opts.z) ++rep.violations;
  }

  std::vector<double> errors(directions);
  const std::uint64_t dir_seed = derive_seed(seed, "logconcave-slope");
  parallel_for(directions, opts.workers, [&](std::size_t i, unsigned) {
    const std::uint64_t s = derive_seed(dir_seed, static_cast<std::uint64_t>(i));
    Rng rng = make_rng(s);
    Vec y(d);
    random_direction(rng, y);
    const double h = projection_support(body, y, opts.proj_samples, derive_seed(s, "proj")).value;
    const double t = opts.slope_drop / h;
    const McEstimate g = f_at(y, t, opts.slope_samples, derive_seed(s, "g"));
    const double slope = std::log(g.value / vol) / t;
    errors[i] = std::abs(slope + h / vol) / (h / vol);
  });
  for (double e : errors) {
    rep.max_slope_rel_error = std::max(rep.max_slope_rel_error, e);
    if (!(e <= opts.slope_tolerance)) ++rep.slope_violations;
  }
  return rep;
}

std::vector<CheckRecord> LogConcavityReport::records(const ConvexBody& body) const {
  CheckRecord lc;
  lc.check = "logconcavity";
  lc.body = body.describe();
  lc.d = body.dim();
  lc.params = {{"z", 3.0}};
  lc.value = worst_sigma;
  lc.bound = -3.0;
  lc.violations = violations;
  lc.trials = triples;
  lc.seed = seed;
  CheckRecord slope = lc;
  slope.check = "logconcavity_slope";
  slope.params = {{"tolerance", slope_tolerance}};
  slope.value = max_slope_rel_error;
  slope.bound = slope_tolerance;
  slope.violations = slope_violations;
  slope.trials = directions;
  if (directions == 0) slope.status = "inconclusive";
  return {lc, slope};
}

// ---------------------------------------------------------------------------

PettyReport check_petty(const ConvexBody& body, std::uint64_t directions, std::uint64_t samples, std::uint64_t seed,
                        unsigned workers, double slack, bool force_mc) {
  require_unit_volume(body, "check_petty");
  const int d = body.dim();
  PettyReport rep;
  rep.bound = polar_proj_ball_volume(d).value;
  rep.slack = slack;
  rep.seed = seed;
  const auto analytic = force_mc ? std::nullopt : analytic_polar_projection_volume(body);
  if (analytic) {
    rep.analytic = true;
    rep.value = *analytic;
    rep.verdict = rep.value <= rep.bound * (1.0 + slack) * (1.0 + 1e-12) ? Verdict::Pass : Verdict::Violation;
    return rep;
  }

  const std::uint64_t n_dirs = std::max<std::uint64_t>(directions, 2ULL * d * d);
  rep.directions = n_dirs;
  std::vector<double> radial(n_dirs);
  const std::uint64_t dir_seed = derive_seed(seed, "petty-directions");
  parallel_for(n_dirs, workers, [&](std::size_t i, unsigned) {
    const std::uint64_t s = derive_seed(dir_seed, static_cast<std::uint64_t>(i));
    Rng rng = make_rng(s);
    Vec u(d);
    random_direction(rng, u);
    const McEstimate h = proj_body_support(body, u, {samples, derive_seed(s, "proj"), 1}, false);
    radial[i] = h.value > 0.0 ? std::pow(h.value, -d) : std::numeric_limits<double>::infinity();
  });
  // vol(Pi* K) = (1/d) int_{S^{d-1}} h_{Pi K}(u)^{-d} du = gamma_d E[h^{-d}].
  double mean = 0.0;
  for (double r : radial) mean += r;
  mean /= static_cast<double>(n_dirs);
  double var = 0.0;
  for (double r : radial) var += (r - mean) * (r - mean);
  var /= static_cast<double>(n_dirs - 1);
  const double gamma_d = bodies::unit_ball_volume(d);
  rep.value = gamma_d * mean;
  rep.std_error = gamma_d * std::sqrt(var / static_cast<double>(n_dirs));
  if (!std::isfinite(rep.value) || rep.std_error > 0.25 * rep.value)
    rep.verdict = Verdict::Inconclusive;
  else if (rep.value <= rep.bound * (1.0 + slack) + 3.0 * rep.std_error)
    rep.verdict = Verdict::Pass;
  else
    rep.verdict = Verdict::Violation;
  return rep;
}

CheckRecord PettyReport::record(const ConvexBody& body) const {
  CheckRecord r;
  r.check = "petty";
  r.body = body.describe();
  r.d = body.dim();
  r.params = {{"analytic", analytic}, {"directions", directions}, {"slack", slack}, {"verdict", to_string(verdict)}};
  r.value = value;
  r.std_error = std_error;
  r.bound = bound;
  r.violations = verdict == Verdict::Violation ? 1 : 0;
  r.trials = 1;
  r.seed = seed;
  if (verdict == Verdict::Inconclusive) r.status = "inconclusive";
  return r;
}

// ---------------------------------------------------------------------------

bool in_regular_simplex(std::span<const double> x) {
  const std::size_t d = x.size();
  double buf[64];
  std::vector<double> heap;
  std::span<double> y;
  if (d + 1 <= 64) {
    y = std::span<double>(buf, d + 1);
  } else {
    heap.resize(d + 1);
    y = heap;
  }
  bodies::simplex_embed(x, y);
  const double c = 1.0 / static_cast<double>(d + 1);
  for (double v : y)
    if (v + c < 0.0) return false;
  return true;
}

RogersShephardReport check_rogers_shephard(int d, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  if (d < 1) throw std::invalid_argument("check_rogers_shephard: d must be >= 1");
  RogersShephardReport rep;
  rep.d = d;
  rep.seed = seed;
  rep.expected = binomial(2 * d, d);
  rep.simplex_volume_exact = bodies::regular_simplex_volume(d);

  // Simplex volume by hit-or-miss over its bounding box. Vertex i of the
  // simplex has coordinate k equal to the i-th entry of Helmert vector k.
  Vec lo(d), hi(d);
  for (int k = 1; k <= d; ++k) {
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    hi[k - 1] = 1.0 / norm;
    lo[k - 1] = -static_cast<double>(k) / norm;
  }
  double box = 1.0;
  for (int k = 0; k < d; ++k) box *= hi[k] - lo[k];
  const std::uint64_t tri_hits =
      detail::count_hits(samples, derive_seed(seed, "simplex"), workers, [&](Rng& rng, std::uint64_t n) {
        Vec x(d);
        std::uint64_t h = 0;
        for (std::uint64_t s = 0; s < n; ++s) {
          for (int k = 0; k < d; ++k) x[k] = uniform(rng, lo[k], hi[k]);
          if (in_regular_simplex(x)) ++h;
        }
        return h;
      });
  const McEstimate tri = detail::binomial_estimate(box, tri_hits, samples, seed);
  rep.simplex_volume_mc = tri.value;

  const McEstimate diff =
      mc_volume(ConvexBody::simplex_difference(d), {samples, derive_seed(seed, "difference"), workers});
  const double twod = std::pow(2.0, d);
  rep.ratio = twod * diff.value / tri.value;
  rep.std_error = rep.ratio * std::hypot(diff.std_error / diff.value, tri.std_error / tri.value);
  rep.rel_error = std::abs(rep.ratio - rep.expected) / rep.expected;

  const McEstimate cube = mc_volume(ConvexBody::cube(d, 0.5), {samples, derive_seed(seed, "cube"), workers});
  const McEstimate cube_diff = mc_volume(ConvexBody::cube(d, 1.0), {samples, derive_seed(seed, "cube-diff"), workers});
  rep.cube_ratio = cube_diff.value / cube.value;
  rep.cube_strict = rep.cube_ratio < rep.expected;
  return rep;
}

std::vector<CheckRecord> RogersShephardReport::records() const {
  CheckRecord r;
  r.check = "rogers_shephard_simplex";
  r.body = "simplex(d=" + std::to_string(d) + ")";
  r.d = d;
  r.params = {{"simplex_volume_mc", simplex_volume_mc}, {"simplex_volume_exact", simplex_volume_exact},
              {"rel_error", rel_error}};
  r.value = ratio;
  r.std_error = std_error;
  r.bound = expected;
  r.violations = std::abs(ratio - expected) > 3.0 * std_error ? 1 : 0;
  r.trials = 1;
  r.seed = seed;
  CheckRecord c = r;
  c.check = "rogers_shephard_cube";
  c.body = "cube(d=" + std::to_string(d) + ")";
  c.params = nlohmann::json::object();
  c.value = cube_ratio;
  c.std_error = 0.0;
  c.violations = (d >= 2 && !cube_strict) ? 1 : 0;
  return {r, c};
}

// ---------------------------------------------------------------------------

bool simplex_translates_overlap(std::span<const double> a, std::span<const double> b) {
  const std::size_t d = a.size();
  if (b.size() != d) throw std::invalid_argument("dimension mismatch");
  Vec diff(d);
  for (std::size_t i = 0; i < d; ++i) diff[i] = a[i] - b[i];
  const Vec z = bodies::simplex_embed(diff);
  const std::size_t n = d + 1;
  // Vertices of T are the standard basis vectors of R^{d+1}, so
  // h_T(u) = max_i u_i. The facet normals of T - T are the 0/1 vectors;
  // z is interior iff z . u < h_T(u) + h_T(-u) for each of them.
  for (std::uint64_t mask = 1; mask + 1 < (1ULL << n); ++mask) {
    double zu = 0.0, h_pos = -std::numeric_limits<double>::infinity(), h_neg = h_pos;
    for (std::size_t i = 0; i < n; ++i) {
      const double ui = (mask >> i) & 1ULL ? 1.0 : 0.0;
      zu += z[i] * ui;
      h_pos = std::max(h_pos, ui);
      h_neg = std::max(h_neg, -ui);
    }
    if (zu >= h_pos + h_neg) return false;
  }
  return true;
}

MinkowskiReport check_minkowski_equivalence(int d, std::uint64_t sets, std::size_t points_per_set,
                                            std::uint64_t seed) {
  if (d < 1 || d > 20) throw std::invalid_argument("check_minkowski_equivalence: d must lie in [1, 20]");
  if (points_per_set < 2) throw std::invalid_argument("check_minkowski_equivalence: need at least two points per set");
  const ConvexBody diff_body = ConvexBody::simplex_difference(d);
  // Box side giving roughly 0.7 expected overlapping pairs per set, so both
  // outcomes occur often.
  const double pairs = 0.5 * static_cast<double>(points_per_set * (points_per_set - 1));
  const double side = std::pow(pairs * std::pow(2.0, d) * diff_body.closed_form_volume() / 0.7, 1.0 / d);

  MinkowskiReport rep;
  rep.d = d;
  rep.sets = sets;
  rep.seed = seed;
  for (std::uint64_t s = 0; s < sets; ++s) {
    Rng rng = make_rng(derive_seed(seed, s));
    std::vector<Vec> pts(points_per_set, Vec(d));
    for (auto& p : pts)
      for (double& v : p) v = uniform(rng, 0.0, side);
    bool pack_simplex = true, pack_difference = true;
    Vec z(d);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (simplex_translates_overlap(pts[i], pts[j])) pack_simplex = false;
        for (int k = 0; k < d; ++k) z[k] = pts[i][k] - pts[j][k];
        if (diff_body.gauge(z) < 2.0) pack_difference = false;
      }
    }
    if (pack_simplex != pack_difference) ++rep.disagreements;
    if (pack_simplex && pack_difference) ++rep.packings;
  }
  return rep;
}

CheckRecord MinkowskiReport::record() const {
  CheckRecord r;
  r.check = "minkowski";
  r.body = "simplex(d=" + std::to_string(d) + ")";
  r.d = d;
  r.params = {{"packings", packings}};
  r.value = static_cast<double>(sets - disagreements);
  r.bound = static_cast<double>(sets);
  r.violations = disagreements;
  r.trials = sets;
  r.seed = seed;
  if (packings == 0 || packings == sets) r.status = "inconclusive";
  return r;
}

}  // namespace normpack::volumetrics
