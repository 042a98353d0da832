#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "normpack/volumetrics/ik.hpp"
#include "normpack/volumetrics/projection.hpp"
#include "normpack/volumetrics/report.hpp"

namespace normpack::volumetrics {

enum class Verdict { Pass, Violation, Inconclusive };
const char* to_string(Verdict v);

struct VerifyOptions {
  ClassifierOptions classifier{.base_samples = 4000, .max_escalations = 4, .z = 3.0, .exact_shortcuts = false};
  /// Samples per Monte Carlo projection-body support evaluation.
  std::uint64_t proj_samples = 200000;
  unsigned workers = 1;
};

// ---------------------------------------------------------------------------
// (1 - delta) Pi*K  subset  {f > delta}  subset  log(1/delta) Pi*K

struct SchmuckenschlagerReport {
  double delta = 0.0;
  double slack = 0.0;
  std::uint64_t seed = 0;
  bool analytic_projection = false;
  // Outer: points with f(x) > delta must satisfy h_{Pi K}(x) <= log(1/delta)(1 + slack).
  std::uint64_t outer_trials = 0;
  std::uint64_t outer_applicable = 0;
  std::uint64_t outer_boundary = 0;
  std::uint64_t outer_violations = 0;
  double outer_max_ratio = 0.0;  // max h_{Pi K}(x) / log(1/delta) over applicable points
  // Inner: points with h_{Pi K}(x) <= (1 - delta)(1 - slack) must satisfy f(x) > delta.
  std::uint64_t inner_trials = 0;
  std::uint64_t inner_boundary = 0;
  std::uint64_t inner_violations = 0;

  std::vector<CheckRecord> records(const ConvexBody& body) const;
};

/// Requires a unit-volume body. Outer points are drawn along random rays up
/// to 1.5 log(1/delta) / h_{Pi K}(u) (clipped to 2K), inner points inside
/// (1 - delta)(1 - slack) Pi*K; f is classified with the escalating sampler.
SchmuckenschlagerReport check_schmuckenschlager(const ConvexBody& body, double delta, std::uint64_t trials,
                                                double slack, std::uint64_t seed, const VerifyOptions& opts);

// ---------------------------------------------------------------------------
// Log-concavity of f along rays and d/dt log f(t y) at 0+ = -h_{Pi K}(y).

struct LogConcavityOptions {
  std::uint64_t samples_per_eval = 20000;
  std::uint64_t slope_samples = 1000000;
  /// Step t chosen so that t h_{Pi K}(y) equals this drop in log f.
  double slope_drop = 0.02;
  double slope_tolerance = 0.05;
  double z = 3.0;
  std::uint64_t proj_samples = 200000;
  unsigned workers = 1;
};

struct LogConcavityReport {
  std::uint64_t triples = 0;
  std::uint64_t violations = 0;
  double worst_sigma = 0.0;  // min over triples of (f_mid - rhs) / sigma
  std::uint64_t directions = 0;
  std::uint64_t slope_violations = 0;
  double max_slope_rel_error = 0.0;
  double slope_tolerance = 0.0;
  std::uint64_t seed = 0;

  std::vector<CheckRecord> records(const ConvexBody& body) const;
};

LogConcavityReport check_logconcavity(const ConvexBody& body, std::uint64_t rays, std::uint64_t directions,
                                      std::uint64_t seed, const LogConcavityOptions& opts);

// ---------------------------------------------------------------------------
// vol(Pi* K) <= vol(Pi* B) for vol K = vol B = 1.

struct PettyReport {
  double value = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool analytic = false;
  std::uint64_t directions = 0;
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::Inconclusive;

  CheckRecord record(const ConvexBody& body) const;
};

/// Analytic when the projection body is known (and force_mc is false);
/// otherwise vol(Pi* K) = gamma_d E_u[h_{Pi K}(u)^-d] over at least 2 d^2
/// uniformly random directions, each support value estimated by Monte Carlo.
PettyReport check_petty(const ConvexBody& body, std::uint64_t directions, std::uint64_t samples, std::uint64_t seed,
                        unsigned workers, double slack = 0.0, bool force_mc = false);

// ---------------------------------------------------------------------------
// vol(T - T) = C(2d, d) vol(T) for the simplex; strict inequality for the cube.

struct RogersShephardReport {
  int d = 0;
  double ratio = 0.0;
  double std_error = 0.0;
  double expected = 0.0;  // C(2d, d)
  double rel_error = 0.0;
  double simplex_volume_mc = 0.0;
  double simplex_volume_exact = 0.0;
  double cube_ratio = 0.0;
  bool cube_strict = false;
  std::uint64_t seed = 0;

  std::vector<CheckRecord> records() const;
};

RogersShephardReport check_rogers_shephard(int d, std::uint64_t samples, std::uint64_t seed, unsigned workers);

/// Whether x lies in the regular simplex conv{e_i} - (1/(d+1)) 1, expressed in
/// the coordinates of simplex_embed.
bool in_regular_simplex(std::span<const double> x);

// ---------------------------------------------------------------------------
// A is a packing set for T iff it is one for (T - T)/2.

/// Interiors of a + T and b + T intersect, decided by the support-function
/// description of T - T over all 0/1 directions of R^{d+1}.
bool simplex_translates_overlap(std::span<const double> a, std::span<const double> b);

struct MinkowskiReport {
  int d = 0;
  std::uint64_t sets = 0;
  std::uint64_t disagreements = 0;
  std::uint64_t packings = 0;  // sets where both predicates hold
  std::uint64_t seed = 0;

  CheckRecord record() const;
};

MinkowskiReport check_minkowski_equivalence(int d, std::uint64_t sets, std::size_t points_per_set,
                                            std::uint64_t seed);

}  // namespace normpack::volumetrics
