#include "normpack/harness/suite.hpp"

#include <cmath>
#include <stdexcept>

#include "normpack/bodies/body_io.hpp"
#include "normpack/packing/poisson.hpp"
#include "normpack/volumetrics/verifiers.hpp"

namespace normpack::harness {

using bodies::ConvexBody;
using volumetrics::CheckRecord;

SuiteLevel parse_level(const std::string& name) {
  if (name == "fast") return SuiteLevel::Fast;
  if (name == "full") return SuiteLevel::Full;
  throw std::invalid_argument("unknown level '" + name + "' (expected fast or full)");
}

namespace {

ConvexBody unit_ball(int d) { return bodies::normalize_to_unit_volume(ConvexBody::lp_ball(d, 2.0)); }
ConvexBody unit_cube(int d) { return ConvexBody::cube(d, 0.5); }

void append(SuiteReport& rep, const std::vector<CheckRecord>& recs) {
  for (const auto& r : recs) rep.records.push_back(r);
}

}  // namespace

SuiteReport verify_suite(const std::string& which, SuiteLevel level, std::uint64_t seed, unsigned workers) {
  static const char* names[] = {"all", "schmuck", "logconcavity", "petty", "rs", "minkowski", "poisson"};
  bool known = false;
  for (const char* n : names) known = known || which == n;
  if (!known) throw std::invalid_argument("unknown check '" + which + "'");
  const bool full = level == SuiteLevel::Full;
  auto wanted = [&](const char* name) { return which == "all" || which == name; };
  volumetrics::VerifyOptions vopts;
  vopts.workers = workers;
  SuiteReport rep;

  if (wanted("schmuck")) {
    const std::uint64_t trials = full ? 1000 : 150;
    const std::uint64_t root = derive_seed(seed, "suite-schmuck");
    std::uint64_t k = 0;
    for (int d = 2; d <= 4; ++d)
      for (double delta : {0.05, 0.5})
        for (const ConvexBody& body : {unit_ball(d), unit_cube(d)})
          append(rep, volumetrics::check_schmuckenschlager(body, delta, trials, 0.05, derive_seed(root, k++), vopts)
                          .records(body));
  }
  if (wanted("logconcavity")) {
    volumetrics::LogConcavityOptions lo;
    lo.workers = workers;
    if (!full) lo.slope_samples = 200000;
    const std::uint64_t rays = full ? 200 : 30;
    const std::uint64_t dirs = full ? 20 : 5;
    const std::uint64_t root = derive_seed(seed, "suite-logconcavity");
    std::uint64_t k = 0;
    for (int d = 2; d <= 4; ++d)
      for (const ConvexBody& body : {unit_ball(d), unit_cube(d)})
        append(rep, volumetrics::check_logconcavity(body, rays, dirs, derive_seed(root, k++), lo).records(body));
  }
  if (wanted("petty")) {
    const std::uint64_t root = derive_seed(seed, "suite-petty");
    for (int d = 2; d <= 8; ++d) {
      const ConvexBody cube = unit_cube(d);
      rep.records.push_back(volumetrics::check_petty(cube, 0, 0, root, workers).record(cube));
    }
    const int d = 3;
    const ConvexBody poly = bodies::normalize_to_unit_volume(
        volumetrics::normalize_with_mc(ConvexBody::hpolytope(bodies::random_symmetric_polytope(d, 5, root), d),
                                       {full ? 2000000ULL : 400000ULL, derive_seed(root, "volume"), workers}));
    rep.records.push_back(volumetrics::check_petty(poly, full ? 200 : 2 * d * d, full ? 200000 : 50000,
                                                   derive_seed(root, "mc"), workers)
                              .record(poly));
  }
  if (wanted("rs")) {
    const std::uint64_t root = derive_seed(seed, "suite-rs");
    for (int d = 1; d <= 3; ++d)
      append(rep, volumetrics::check_rogers_shephard(d, full ? 2000000 : 500000, derive_seed(root, d), workers)
                      .records());
  }
  if (wanted("minkowski")) {
    const std::uint64_t root = derive_seed(seed, "suite-minkowski");
    for (int d = 2; d <= 3; ++d)
      rep.records.push_back(volumetrics::check_minkowski_equivalence(d, 100, 8, derive_seed(root, d)).record());
  }
  if (wanted("poisson")) {
    const auto t = packing::check_poisson_tail(20.0, 1.0, 100000, derive_seed(seed, "suite-poisson"));
    CheckRecord r;
    r.check = "poisson_tail";
    r.body = "none";
    r.params = {{"lambda", t.lambda}, {"t", t.t}, {"exact", t.exact}};
    r.value = t.empirical;
    r.std_error = t.sigma;
    r.bound = t.bound;
    r.trials = t.draws;
    r.violations = t.empirical > t.bound + 3.0 * t.sigma ? 1 : 0;
    r.seed = t.seed;
    rep.records.push_back(r);
  }
  for (const auto& r : rep.records) {
    if (r.violations > 0) ++rep.violations;
    if (r.status != "ok") ++rep.inconclusive;
  }
  return rep;
}

}  // namespace normpack::harness
