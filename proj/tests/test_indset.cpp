#include <sstream>

#include "doctest.h"
#include "normpack/bodies/body_io.hpp"
#include "normpack/indset/independent_set.hpp"
#include "normpack/indset/verify.hpp"
#include "normpack/packing/graph.hpp"
#include "oracles.hpp"

using namespace normpack;
using namespace normpack::indset;
using packing::PackingGraph;
using packing::PointSet;
using packing::TorusDomain;

namespace {

PackingGraph random_graph(std::size_t n, double p, std::uint64_t seed, std::vector<std::pair<int, int>>* edges) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  Rng rng = make_rng(seed);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (uniform01(rng) < p) {
        adj[i].push_back(static_cast<std::uint32_t>(j));
        adj[j].push_back(static_cast<std::uint32_t>(i));
        if (edges) edges->emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return PackingGraph::from_lists(adj);
}

bool is_maximal(const PackingGraph& g, const std::vector<std::uint32_t>& set) {
  std::vector<char> covered(g.vertex_count(), 0);
  for (auto v : set) {
    covered[v] = 1;
    for (auto w : g.neighbors_of(v)) covered[w] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

PointSet points(int d, std::vector<std::vector<double>> rows) {
  PointSet s;
  s.d = d;
  for (const auto& r : rows) s.coords.insert(s.coords.end(), r.begin(), r.end());
  return s;
}

}  // namespace

TEST_SUITE("indset") {
  TEST_CASE("order policy names") {
    CHECK(parse_order_policy("random") == OrderPolicy::Random);
    CHECK(parse_order_policy("min_degree") == OrderPolicy::MinDegree);
    CHECK(std::string(to_string(OrderPolicy::MinDegree)) == "min_degree");
    CHECK_THROWS_AS(parse_order_policy("largest"), std::invalid_argument);
  }

  TEST_CASE("greedy on edgeless and complete graphs") {
    const auto edgeless = PackingGraph::from_lists(std::vector<std::vector<std::uint32_t>>(7));
    for (auto policy : {OrderPolicy::Random, OrderPolicy::MinDegree})
      CHECK(greedy_independent_set(edgeless, policy, 1).size() == 7);
    std::vector<std::vector<std::uint32_t>> k5(5);
    for (std::uint32_t i = 0; i < 5; ++i)
      for (std::uint32_t j = 0; j < 5; ++j)
        if (i != j) k5[i].push_back(j);
    const auto complete = PackingGraph::from_lists(k5);
    for (auto policy : {OrderPolicy::Random, OrderPolicy::MinDegree})
      CHECK(greedy_independent_set(complete, policy, 2).size() == 1);
    CHECK(greedy_independent_set(PackingGraph{}, OrderPolicy::Random, 1).empty());
  }

  TEST_CASE("greedy sets are maximal and respect the trivial bound") {
    for (std::uint64_t s = 0; s < 40; ++s) {
      const auto g = random_graph(60, 0.1, s, nullptr);
      for (auto policy : {OrderPolicy::Random, OrderPolicy::MinDegree}) {
        const auto set = greedy_independent_set(g, policy, s);
        CHECK(is_independent(g, set));
        CHECK(is_maximal(g, set));
        const auto stats = packing::degree_codegree_stats(g);
        CHECK(set.size() * (stats.max_degree + 1) >= g.vertex_count());
      }
    }
    const auto g = random_graph(50, 0.2, 3, nullptr);
    CHECK(greedy_independent_set(g, OrderPolicy::Random, 9) == greedy_independent_set(g, OrderPolicy::Random, 9));
  }

  TEST_CASE("min-degree greedy picks leaves of a star") {
    std::vector<std::vector<std::uint32_t>> star(6);
    for (std::uint32_t i = 1; i < 6; ++i) {
      star[0].push_back(i);
      star[i].push_back(0);
    }
    CHECK(greedy_independent_set(PackingGraph::from_lists(star), OrderPolicy::MinDegree, 0).size() == 5);
  }

  TEST_CASE("local search performs the (1,2)-swap on a path") {
    const auto p3 = PackingGraph::from_lists({{1}, {0, 2}, {1}});
    const auto res = local_search_improve(p3, {1}, 10);
    CHECK(res.set == std::vector<std::uint32_t>{0, 2});
    CHECK(res.swaps == 1);
    CHECK_FALSE(res.budget_exhausted);
    const auto zero = local_search_improve(p3, {1}, 0);
    CHECK(zero.set == std::vector<std::uint32_t>{1});
    CHECK(zero.budget_exhausted);
    CHECK_THROWS_AS(local_search_improve(p3, {0, 1}, 10), std::invalid_argument);
    // Free vertices are inserted.
    const auto grown = local_search_improve(p3, {}, 10);
    CHECK(grown.set.size() == 2);
  }

  TEST_CASE("local search against exhaustive maximum independent sets") {
    std::size_t optimal = 0;
    for (std::uint64_t s = 0; s < 60; ++s) {
      std::vector<std::pair<int, int>> edges;
      const std::size_t n = 10 + s % 9;
      const auto g = random_graph(n, 0.25, 500 + s, &edges);
      const std::size_t best = oracle::max_independent_set(static_cast<int>(n), edges);
      const auto greedy = greedy_independent_set(g, OrderPolicy::Random, s);
      const auto ls = local_search_improve(g, greedy, 1000);
      CHECK(is_independent(g, ls.set));
      CHECK(ls.set.size() >= greedy.size());
      CHECK(ls.set.size() <= best);
      optimal += ls.set.size() == best;
    }
    CHECK(optimal >= 40);
  }

  TEST_CASE("verify_packing") {
    const auto ball = bodies::ConvexBody::lp_ball(2, 2.0);
    TorusDomain t{2, 10.0};
    const auto good = verify_packing(points(2, {{1.0, 1.0}, {3.0, 1.0}, {9.5, 9.5}}), ball, t);
    CHECK(good.count == 3);
    CHECK(good.min_pair_gauge == doctest::Approx(2.0));
    CHECK(good.reference_density == 0.25);
    CHECK(good.density == doctest::Approx(3.0 * M_PI / 100.0));
    const auto none = verify_packing(points(2, {}), ball, t);
    CHECK(none.count == 0);
    CHECK(none.density == 0.0);
    try {
      verify_packing(points(2, {{1.0, 1.0}, {5.0, 5.0}, {2.5, 1.0}}), ball, t);
      FAIL("expected an overlap");
    } catch (const OverlapError& e) {
      CHECK(e.first() == 0);
      CHECK(e.second() == 2);
      CHECK(e.gauge() == doctest::Approx(1.5));
    }
    // Overlap through the periodic boundary.
    CHECK_THROWS_AS(verify_packing(points(2, {{0.2, 5.0}, {9.5, 5.0}}), ball, t), OverlapError);
  }

  TEST_CASE("packing file round trip") {
    bodies::BodySpec spec;
    spec.kind = "lp";
    spec.d = 2;
    spec.p = bodies::ConvexBody::kInfinity;
    spec.scale = 0.5;
    TorusDomain t{2, 9.0};
    const auto centers = points(2, {{0.5, 0.5}, {1.5, 0.5}, {1.0 / 3.0, 7.25}});
    std::stringstream ss;
    write_packing(ss, spec, t, centers);
    const auto back = read_packing(ss);
    CHECK(back.body.p == spec.p);
    CHECK(back.body.scale == spec.scale);
    CHECK(back.domain.L == 9.0);
    CHECK(back.centers.coords == centers.coords);
    std::istringstream bad("# L 3\n1 2\n");
    CHECK_THROWS(read_packing(bad));
  }
}
