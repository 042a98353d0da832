// Acceptance criteria 1-14: one PASS/FAIL line each, exit status 1 on any FAIL.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "graph_oracles.hpp"
#include "normpack/bodies/body_io.hpp"
#include "normpack/harness/config.hpp"
#include "normpack/harness/pipeline.hpp"
#include "normpack/indset/independent_set.hpp"
#include "normpack/indset/verify.hpp"
#include "normpack/packing/graph.hpp"
#include "normpack/volumetrics/estimate.hpp"
#include "normpack/volumetrics/projection.hpp"
#include "normpack/volumetrics/verifiers.hpp"
#include "oracles.hpp"

using namespace normpack;
using bodies::ConvexBody;

namespace {

constexpr std::uint64_t kRoot = 20261015;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

ConvexBody unit_ball(int d) { return bodies::normalize_to_unit_volume(ConvexBody::lp_ball(d, 2.0)); }
ConvexBody unit_cube(int d) { return ConvexBody::cube(d, 0.5); }

// 1 -----------------------------------------------------------------------
void volume_calibration(Verdict& v) {
  const std::array<std::pair<int, double>, 5> cases = {
      {{2, 1.0}, {2, 2.0}, {3, 2.0}, {4, 3.0}, {6, ConvexBody::kInfinity}}};
  // Independent closed forms: 2, pi, 4pi/3, 8 G(4/3)^4 / G(7/3), 2^6.
  const std::array<double, 5> exact = {2.0, M_PI, 4.0 * M_PI / 3.0,
                                       std::pow(2.0 * std::tgamma(4.0 / 3.0), 4) / std::tgamma(7.0 / 3.0), 64.0};
  double worst_z = 0.0, slowest = 0.0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto body = ConvexBody::lp_ball(cases[k].first, cases[k].second);
    const auto t0 = std::chrono::steady_clock::now();
    const auto est = volumetrics::mc_volume(body, {1000000, derive_seed(kRoot, 100 + k), 1});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // A body equal to its bounding box is estimated exactly (zero error).
    const double z = est.std_error > 0.0 ? std::abs(est.value - exact[k]) / est.std_error
                                         : (est.value == exact[k] ? 0.0 : INFINITY);
    worst_z = std::max(worst_z, z);
    slowest = std::max(slowest, secs);
    v.require(z <= 3.0, "d=" + std::to_string(cases[k].first) + " off by " + std::to_string(z) + " sigma");
    v.require(secs < 10.0, "slow run");
  }
  v.detail << "worst |z|=" << worst_z << " slowest=" << slowest << "s";
}

// 2 -----------------------------------------------------------------------
void intersection_oracle(Verdict& v) {
  const std::uint64_t seed = derive_seed(kRoot, "intersection");
  Rng rng = make_rng(seed);
  std::size_t cube_miss = 0, ball_miss = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int d = 2 + k % 4;
    Vec x(d);
    for (double& c : x) c = uniform(rng, -1.0, 1.0);
    const auto est = volumetrics::intersection_volume(unit_cube(d), x, {200000, derive_seed(seed, k), 1});
    // Standard errors are floored at one-hit resolution.
    const double z = std::abs(est.value - oracle::unit_cube_overlap(x)) / std::max(est.std_error, 1.0 / 200000);
    worst = std::max(worst, z);
    cube_miss += z > 3.0;
  }
  const auto ball = ConvexBody::lp_ball(3, 2.0);
  for (int k = 0; k < 100; ++k) {
    const double t = uniform(rng, 0.0, 2.0);
    const Vec x = {t, 0.0, 0.0};
    const auto est = volumetrics::intersection_volume(ball, x, {200000, derive_seed(seed, 1000 + k), 1});
    const double z = std::abs(est.value - oracle::lens_volume(1.0, t)) /
                     std::max(est.std_error, ball.volume() / 200000);
    worst = std::max(worst, z);
    ball_miss += z > 3.0;
  }
  v.require(cube_miss == 0, std::to_string(cube_miss) + " cube points beyond 3 sigma");
  v.require(ball_miss == 0, std::to_string(ball_miss) + " lens radii beyond 3 sigma");
  v.detail << "cube 100 x (d=2..5), ball 100 radii, worst |z|=" << worst;
}

// 3 -----------------------------------------------------------------------
void schmuckenschlager(Verdict& v) {
  volumetrics::VerifyOptions opts;
  opts.workers = workers();
  std::uint64_t outer = 0, inner = 0, boundary = 0, k = 0;
  for (int d = 2; d <= 4; ++d)
    for (double delta : {0.05, 0.5})
      for (const auto& body : {unit_ball(d), unit_cube(d)}) {
        const auto r = volumetrics::check_schmuckenschlager(body, delta, 1000, 0.05,
                                                            derive_seed(kRoot, 300 + k++), opts);
        outer += r.outer_violations;
        inner += r.inner_violations;
        boundary += r.outer_boundary + r.inner_boundary;
        v.require(r.outer_trials == 1000 && r.inner_trials == 1000, "trial count");
      }
  v.require(outer == 0, "outer violations");
  v.require(inner == 0, "inner violations");
  v.detail << "12 configurations x 1000 points: outer=" << outer << " inner=" << inner
           << " boundary-labelled=" << boundary;
}

// 4 -----------------------------------------------------------------------
void petty(Verdict& v) {
  for (int d = 2; d <= 8; ++d) {
    const auto r = volumetrics::check_petty(unit_cube(d), 0, 0, 1, 1);
    const double cube = std::ldexp(1.0, d) / oracle::factorial(d);
    const double ball = std::pow(std::sqrt(M_PI) * std::tgamma((d + 1) / 2.0) / std::tgamma(d / 2.0 + 1.0), d);
    v.require(r.analytic && r.verdict == volumetrics::Verdict::Pass, "cube d=" + std::to_string(d));
    v.require(std::abs(r.value - cube) <= 1e-12 * cube && std::abs(r.bound - ball) <= 1e-9 * ball,
              "closed form d=" + std::to_string(d));
    v.require(cube <= ball, "cube exceeds ball d=" + std::to_string(d));
  }
  const int d = 3;
  const std::uint64_t seed = derive_seed(kRoot, "petty");
  const auto poly = bodies::normalize_to_unit_volume(volumetrics::normalize_with_mc(
      ConvexBody::hpolytope(bodies::random_symmetric_polytope(d, 5, seed), d),
      {2000000, derive_seed(seed, "volume"), workers()}));
  const auto r = volumetrics::check_petty(poly, 200, 200000, derive_seed(seed, "mc"), workers());
  v.require(r.value <= r.bound + 3.0 * r.std_error, "random polytope above the ball value");
  v.detail << "analytic cube d=2..8 exact; random H-polytope d=3: " << r.value << " +- " << r.std_error
           << " vs ball " << r.bound;
}

// 5 -----------------------------------------------------------------------
void polar_projection(Verdict& v) {
  std::size_t ok = 0;
  for (int d = 1; d <= 64; ++d) {
    const auto p = volumetrics::polar_proj_ball_volume(d);
    ok += p.within_bound && p.log_value <= p.log_bound;
  }
  v.require(ok == 64, "bound fails for some d");
  char buf2[32], buf3[32];
  std::snprintf(buf2, sizeof buf2, "%.5f", volumetrics::polar_proj_ball_volume(2).value);
  std::snprintf(buf3, sizeof buf3, "%.5f", volumetrics::polar_proj_ball_volume(3).value);
  v.require(std::string(buf2) == "2.46740", std::string("d=2 value ") + buf2);
  v.require(std::string(buf3) == "2.37037", std::string("d=3 value ") + buf3);
  v.require(std::abs(volumetrics::polar_proj_ball_volume(2).value - M_PI * M_PI / 4.0) < 1e-12, "d=2 pi^2/4");
  v.require(std::abs(volumetrics::polar_proj_ball_volume(3).value - 64.0 / 27.0) < 1e-12, "d=3 64/27");
  v.detail << "bound holds for d=1..64; d=2 " << buf2 << ", d=3 " << buf3;
}

// 6 -----------------------------------------------------------------------
void logconcavity(Verdict& v) {
  volumetrics::LogConcavityOptions opts;
  opts.workers = workers();
  std::uint64_t violations = 0, slope = 0, k = 0;
  double worst_sigma = 0.0, worst_slope = 0.0;
  for (int d = 2; d <= 4; ++d)
    for (const auto& body : {unit_ball(d), unit_cube(d)}) {
      const auto r = volumetrics::check_logconcavity(body, 200, 20, derive_seed(kRoot, 600 + k++), opts);
      violations += r.violations;
      slope += r.slope_violations;
      worst_sigma = std::min(worst_sigma, r.worst_sigma);
      worst_slope = std::max(worst_slope, r.max_slope_rel_error);
    }
  v.require(violations == 0, "log-concavity violations");
  v.require(slope == 0, "slope mismatches");
  v.detail << "6 bodies x 200 triples: violations=" << violations << " (worst " << worst_sigma
           << " sigma); 20 directions: max slope error " << worst_slope;
}

// 7, 8 --------------------------------------------------------------------
struct PipelineBatch {
  std::size_t runs = 0;
  std::size_t degree_violations = 0, codegree_violations = 0;
  std::size_t overlaps = 0, below_trivial = 0, failures = 0;
  double min_density_ratio = INFINITY;
  std::string first_error;
};

const PipelineBatch& pipeline_batch() {
  static const PipelineBatch batch = [] {
    PipelineBatch b;
    for (int d = 2; d <= 4; ++d)
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ++b.runs;
        auto cfg = harness::desk_defaults(d);
        cfg.seed = seed;
        cfg.workers = workers();
        try {
          const auto out = harness::run_pipeline(cfg);
          const auto body = bodies::make_body(out.unit_body);
          const auto ref = oracle::brute_force_graph(out.retained, body, out.domain);
          const double degree_bound = cfg.Delta + std::pow(cfg.Delta, 2.0 / 3.0);
          const double codegree_bound = cfg.codegree_coeff * cfg.Delta;
          for (std::size_t i = 0; i < ref.n; ++i) {
            b.degree_violations += static_cast<double>(ref.degree(i)) > degree_bound;
            for (std::size_t j = i + 1; j < ref.n; ++j)
              b.codegree_violations += static_cast<double>(ref.codegree(i, j)) > codegree_bound;
          }
          // Independent all-pairs overlap scan of the centers.
          Vec z(d);
          for (std::size_t i = 0; i < out.centers.size(); ++i)
            for (std::size_t j = i + 1; j < out.centers.size(); ++j) {
              out.domain.minimal_image(out.centers.point(i), out.centers.point(j), z);
              b.overlaps += body.gauge(z) < 2.0 * (1.0 - 1e-12);
            }
          b.overlaps += out.record["packing"]["valid"] != true;
          const double density = static_cast<double>(out.centers.size()) / out.domain.volume();
          const double ratio = density / std::ldexp(1.0, -d);
          b.min_density_ratio = std::min(b.min_density_ratio, ratio);
          b.below_trivial += ratio < 1.0;
        } catch (const std::exception& e) {
          ++b.failures;
          if (b.first_error.empty()) b.first_error = e.what();
        }
      }
    return b;
  }();
  return batch;
}

void pruned_bounds(Verdict& v) {
  const auto& b = pipeline_batch();
  v.require(b.runs >= 50, "fewer than 50 runs");
  v.require(b.failures == 0, "pipeline failure: " + b.first_error);
  v.require(b.degree_violations == 0, "degree bound");
  v.require(b.codegree_violations == 0, "codegree bound");
  v.detail << b.runs << " runs (d=2..4, seeds 1..20), brute-force recheck: degree violations=" << b.degree_violations
           << " codegree violations=" << b.codegree_violations;
}

void packing_density(Verdict& v) {
  const auto& b = pipeline_batch();
  v.require(b.failures == 0, "pipeline failure: " + b.first_error);
  v.require(b.overlaps == 0, "overlapping centers");
  v.require(b.below_trivial == 0, "density below 2^-d");
  v.detail << b.runs << " packings, overlaps=" << b.overlaps << ", min density / 2^-d = " << b.min_density_ratio;
}

// 9 -----------------------------------------------------------------------
void graph_equivalence(Verdict& v) {
  const std::uint64_t seed = derive_seed(kRoot, "graph");
  std::vector<ConvexBody> zoo = {unit_ball(2), unit_cube(3),
                                 bodies::normalize_to_unit_volume(ConvexBody::simplex_difference(3)),
                                 bodies::normalize_to_unit_volume(ConvexBody::lp_ball(4, 1.0)),
                                 bodies::normalize_to_unit_volume(ConvexBody::lp_ball(2, 3.0))};
  zoo.push_back(bodies::normalize_to_unit_volume(volumetrics::normalize_with_mc(
      ConvexBody::hpolytope(bodies::random_symmetric_polytope(3, 6, seed), 3), {400000, seed, 1})));
  std::size_t mismatches = 0, largest = 0, edges = 0;
  for (int k = 0; k < 20; ++k) {
    const auto& body = zoo[k % zoo.size()];
    const int d = body.dim();
    const double side = std::max(8.2 * body.circumradius(), std::pow(1200.0 / (4.0 + k % 3 * 2.0), 1.0 / d));
    const double delta = std::ldexp(1200.0 / std::pow(side, d), d);
    const packing::TorusDomain dom{d, side};
    const auto pts = packing::sample_poisson(dom, delta, derive_seed(seed, k));
    largest = std::max(largest, pts.size());
    const auto g = packing::build_graph(pts, body, dom, workers());
    const auto ref = oracle::brute_force_graph(pts, body, dom);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (i != j) mismatches += ref.has(i, j) != g.adjacent(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    edges += g.edge_count();
  }
  v.require(largest <= 2000, "instance larger than 2000 points");
  v.require(mismatches == 0, "adjacency mismatch");
  v.detail << "20 instances over " << zoo.size() << " bodies, max n=" << largest << ", " << edges
           << " edges, mismatches=" << mismatches;
}

// 10 ----------------------------------------------------------------------
void independent_sets(Verdict& v) {
  const std::uint64_t seed = derive_seed(kRoot, "indset");
  std::size_t above_max = 0, below_bound = 0, dependent = 0;
  for (int k = 0; k < 50; ++k) {
    Rng rng = make_rng(derive_seed(seed, k));
    const int n = 6 + k % 13;
    const double p = 0.1 + 0.05 * (k % 7);
    std::vector<std::vector<std::uint32_t>> adj(n);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (uniform01(rng) < p) {
          adj[i].push_back(j);
          adj[j].push_back(i);
          edges.emplace_back(i, j);
        }
    const auto g = packing::PackingGraph::from_lists(adj);
    const std::size_t best = oracle::max_independent_set(n, edges);
    std::size_t max_deg = 0;
    for (const auto& a : adj) max_deg = std::max(max_deg, a.size());
    for (auto policy : {indset::OrderPolicy::Random, indset::OrderPolicy::MinDegree}) {
      const auto greedy = indset::greedy_independent_set(g, policy, derive_seed(seed, 100 + k));
      const auto ls = indset::local_search_improve(g, greedy, 100000);
      for (const auto* set : {&greedy, &ls.set}) {
        above_max += set->size() > best;
        below_bound += set->size() * (max_deg + 1) < static_cast<std::size_t>(n);
        dependent += !indset::is_independent(g, *set);
      }
    }
  }
  v.require(above_max == 0, "set larger than the exhaustive maximum");
  v.require(below_bound == 0, "set below n/(maxdeg+1)");
  v.require(dependent == 0, "dependent set");
  v.detail << "50 graphs n=6..18, 2 policies, greedy + local search: above maximum=" << above_max
           << " below bound=" << below_bound;
}

// 11 ----------------------------------------------------------------------
void minkowski(Verdict& v) {
  std::uint64_t disagreements = 0, packings = 0;
  for (int d = 2; d <= 3; ++d) {
    const auto r = volumetrics::check_minkowski_equivalence(d, 100, 8, derive_seed(kRoot, 1100 + d));
    disagreements += r.disagreements;
    packings += r.packings;
    v.require(r.sets == 100, "set count");
  }
  v.require(disagreements == 0, "predicate disagreement");
  v.detail << "200 sets (d=2,3): disagreements=" << disagreements << ", packing sets=" << packings;
}

// 12 ----------------------------------------------------------------------
void rogers_shephard(Verdict& v) {
  const auto r2 = volumetrics::check_rogers_shephard(2, 2000000, derive_seed(kRoot, 1202), workers());
  const auto r3 = volumetrics::check_rogers_shephard(3, 2000000, derive_seed(kRoot, 1203), workers());
  const double e2 = oracle::binomial(4, 2), e3 = oracle::binomial(6, 3);
  v.require(std::abs(r2.ratio - e2) <= 0.03 * e2, "triangle ratio");
  v.require(std::abs(r3.ratio - e3) <= 0.05 * e3, "tetrahedron ratio");
  v.require(r2.cube_strict && r2.cube_ratio < e2 && r3.cube_strict && r3.cube_ratio < e3, "cube control");
  v.detail << "triangle " << r2.ratio << " (6), simplex d=3 " << r3.ratio << " (20), cube " << r2.cube_ratio << ", "
           << r3.cube_ratio;
}

// 13 ----------------------------------------------------------------------
void poisson_tail(Verdict& v) {
  const auto r = packing::check_poisson_tail(20.0, 1.0, 100000, derive_seed(kRoot, "poisson"));
  v.require(r.draws == 100000, "draw count");
  v.require(r.empirical <= std::exp(-20.0 / 3.0) + 3.0 * r.sigma, "tail above bound");
  v.detail << "P[Z>40] empirical=" << r.empirical << " bound=" << std::exp(-20.0 / 3.0) << " sigma=" << r.sigma;
}

// 14 ----------------------------------------------------------------------
std::string run_capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  if (pclose(pipe) != 0) out = "exit-failure:" + out;
  return out;
}

void determinism(Verdict& v) {
  const auto dir = std::filesystem::temp_directory_path() / "normpack-acceptance";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "config.json";
  std::ofstream(cfg) << R"({"d": 3, "seed": 42, "body": {"kind": "lp", "p": 2}})";
  const std::string base = std::string("NORMPACK_OUTPUT_DIR=") + dir.string() + " " + NORMPACK_PACK_BIN +
                           " run " + cfg.string() + " --quiet --workers ";
  const std::string a = run_capture(base + "1"), b = run_capture(base + "1");
  const std::string c = run_capture(base + "8"), e = run_capture(base + "8");
  v.require(a.rfind("{", 0) == 0, "pack run failed");
  v.require(a == b, "workers=1 runs differ");
  v.require(c == e, "workers=8 runs differ");
  v.require(a == c, "workers 1 vs 8 differ");
  v.detail << "4 runs of pack run (workers 1,1,8,8), record " << a.size() << " bytes, identical=" << (a == b && b == c && c == e);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
      {"volume calibration", volume_calibration},
      {"intersection oracle", intersection_oracle},
      {"Schmuckenschlager containment", schmuckenschlager},
      {"Petty inequality", petty},
      {"polar-projection formula", polar_projection},
      {"log-concavity and derivative identity", logconcavity},
      {"pruned degree and codegree bounds", pruned_bounds},
      {"packing validity and density", packing_density},
      {"graph-build equivalence", graph_equivalence},
      {"independent-set sanity", independent_sets},
      {"Minkowski equivalence", minkowski},
      {"Rogers-Shephard ratio", rogers_shephard},
      {"Poisson tail", poisson_tail},
      {"determinism", determinism},
  };
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[k].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(),
                v.detail.str().c_str(), secs);
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
