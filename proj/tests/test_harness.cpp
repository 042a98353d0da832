#include <sstream>

#include "doctest.h"
#include "normpack/harness/config.hpp"
#include "normpack/harness/pipeline.hpp"
#include "normpack/harness/suite.hpp"
#include "normpack/harness/sweep.hpp"

using namespace normpack;
using namespace normpack::harness;
using nlohmann::json;

namespace {

ExperimentConfig small_config(int d, std::uint64_t seed) {
  auto cfg = parse_config(json{{"d", d}, {"seed", seed}});
  cfg.target_points = 600;
  return cfg;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("config round trip") {
    const json j = {{"d", 3},
                    {"seed", 17},
                    {"body", {{"kind", "lp"}, {"p", "inf"}}},
                    {"L", 12.5},
                    {"Delta", 40},
                    {"codegree_coeff", 0.75},
                    {"order_policy", "random"}};
    const auto cfg = parse_config(j);
    CHECK(cfg.body.d == 3);
    CHECK(cfg.L == 12.5);
    const auto once = to_json(cfg);
    const auto twice = to_json(parse_config(once));
    CHECK(once.dump() == twice.dump());
    CHECK(config_hash(cfg) == config_hash(parse_config(once)));
    auto other = cfg;
    other.workers = 8;
    other.output = "/tmp/x.jsonl";
    CHECK(config_hash(other) == config_hash(cfg));
    other.seed = 18;
    CHECK(config_hash(other) != config_hash(cfg));
    CHECK(to_json(parse_config(json{{"d", 2}, {"seed", 1}}))["L"] == "auto");
  }

  TEST_CASE("config validation") {
    CHECK_THROWS_AS(parse_config(json{{"d", 2}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(json{{"seed", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(json{{"d", 2}, {"seed", 1}, {"Delat", 3}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(json{{"d", 2}, {"seed", 1}, {"Delta", -3}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(json{{"d", 2}, {"seed", 1}, {"ik_delta", 0}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(json{{"d", 2}, {"seed", 1}, {"body", {{"kind", "lp"}, {"d", 3}}}}),
                    std::invalid_argument);
    // L below the no-self-wrap bound of the unit-volume disc (8R = 4.51).
    CHECK_THROWS_AS(parse_config(json{{"d", 2}, {"seed", 1}, {"L", 4.0}}), std::invalid_argument);
    auto cfg = parse_config(json{{"d", 2}, {"seed", 1}});
    cfg.L = 4.0;
    try {
      run_pipeline(cfg);
      FAIL("expected rejection");
    } catch (const StageError& e) {
      CHECK(e.stage() == "config");
    }
  }

  TEST_CASE("grid parsing and sweep points") {
    const auto axes = parse_grid("Delta=10,20;d=2:4");
    REQUIRE(axes.size() == 2);
    CHECK(axes[0].values == std::vector<double>{10, 20});
    CHECK(axes[1].values == std::vector<double>{2, 3, 4});
    CHECK(parse_grid("seed=1:7:3")[0].values == std::vector<double>{1, 4, 7});
    CHECK_THROWS_AS(parse_grid(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("colour=1"), std::invalid_argument);
    const auto base = small_config(2, 1);
    const auto p = apply_point(base, axes, {1, 2});
    CHECK(p.Delta == 20);
    CHECK(p.d == 4);
    CHECK(p.body.d == 4);
  }

  TEST_CASE("pipeline example: d=2 ball, L=40, Delta=30") {
    auto cfg = parse_config(json{{"d", 2}, {"seed", 11}, {"L", 40.0}, {"Delta", 30.0}});
    const auto out = run_pipeline(cfg);
    const auto& r = out.record;
    CHECK(r["status"] == "ok");
    CHECK(r["packing"]["valid"] == true);
    CHECK(r["packing"]["density"].get<double>() > 0.25);
    CHECK(r["config_hash"] == config_hash(cfg));
    CHECK(out.centers.size() == r["packing"]["count"].get<std::size_t>());
    CHECK(r["pruned_graph"]["degree_bound_holds"] == true);
    CHECK(r["pruned_graph"]["codegree_bound_holds"] == true);
    const auto& is = r["independent_set"];
    CHECK(is["size"].get<double>() >= is["greedy_bound"].get<double>());
  }

  TEST_CASE("pipeline example: near-empty sample") {
    auto cfg = parse_config(json{{"d", 2}, {"seed", 2}, {"L", 10.0}, {"Delta", 1e-9}});
    const auto r = run_pipeline(cfg).record;
    CHECK(r["status"] == "ok");
    CHECK(r["packing"]["count"].get<std::size_t>() <= 1);
    CHECK(r["packing"]["density"].get<double>() < 0.02);
  }

  TEST_CASE("pipeline determinism across runs and worker counts") {
    auto cfg = small_config(3, 5);
    const auto a = run_pipeline(cfg).record.dump();
    cfg.workers = 4;
    const auto b = run_pipeline(cfg).record.dump();
    CHECK(a == b);
    cfg.seed = 6;
    CHECK(run_pipeline(cfg).record.dump() != a);
  }

  TEST_CASE("non-closed-form bodies run through the pipeline") {
    auto cfg = parse_config(json{{"d", 2},
                                 {"seed", 4},
                                 {"target_points", 400},
                                 {"body", {{"kind", "hpoly"},
                                           {"facets",
                                            {{{"normal", {1, 0}}, {"offset", 1}},
                                             {{"normal", {-1, 0}}, {"offset", 1}},
                                             {{"normal", {0, 1}}, {"offset", 1}},
                                             {{"normal", {0, -1}}, {"offset", 1}},
                                             {{"normal", {1, 1}}, {"offset", 1.5}},
                                             {{"normal", {-1, -1}}, {"offset", 1.5}}}}}}});
    const auto r = run_pipeline(cfg).record;
    CHECK(r["status"] == "ok");
    CHECK(r["body"]["volume"].get<double>() == doctest::Approx(1.0).epsilon(0.02));
    CHECK(r["packing"]["valid"] == true);
  }

  TEST_CASE("sweep rows") {
    const auto base = small_config(2, 3);
    const auto one = sweep(base, parse_grid("seed=3"));
    REQUIRE(one.rows.size() == 1);
    CHECK(one.records[0].dump() == run_pipeline(base).record.dump());
    CHECK(one.rows[0].independent == one.records[0]["packing"]["count"].get<std::size_t>());
    // A failing grid point is kept as a flagged row.
    const auto mixed = sweep(base, parse_grid("L=3,20"));
    REQUIRE(mixed.rows.size() == 2);
    CHECK(mixed.rows[0].status == "failed");
    CHECK_FALSE(mixed.rows[0].error.empty());
    CHECK(mixed.rows[1].status == "ok");
    std::ostringstream csv;
    write_sweep_csv(csv, mixed.rows);
    std::istringstream lines(csv.str());
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count == 3);
    CHECK(csv.str().rfind("d,Delta,L,seed,points,retained,independent,density,trivial_bound", 0) == 0);
  }

  TEST_CASE("sweep: the mean point count grows with Delta") {
    auto base = small_config(2, 1);
    base.L = 12.0;
    const auto res = sweep(base, parse_grid("Delta=6,12,24;seed=1:3"));
    std::vector<double> mean(3, 0.0);
    for (std::size_t k = 0; k < res.rows.size(); ++k) mean[k / 3] += static_cast<double>(res.rows[k].points) / 3.0;
    CHECK(mean[0] <= mean[1]);
    CHECK(mean[1] <= mean[2]);
  }

  TEST_CASE("sweep over dimension stays above the trivial bound") {
    auto base = small_config(2, 7);
    base.target_points = 1500;
    const auto res = sweep(base, parse_grid("d=2:5"));
    for (const auto& row : res.rows) {
      CHECK(row.status == "ok");
      CHECK(row.density >= row.trivial_bound);
    }
  }

  TEST_CASE("fast verification suite") {
    const auto rep = verify_suite("all", SuiteLevel::Fast, 1, 1);
    CHECK(rep.passed());
    CHECK(rep.records.size() > 10);
    CHECK_THROWS_AS(verify_suite("nothing", SuiteLevel::Fast, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(parse_level("medium"), std::invalid_argument);
  }
}
