#include "normpack/harness/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "normpack/indset/independent_set.hpp"
#include "normpack/indset/verify.hpp"
#include "normpack/packing/graph.hpp"
#include "normpack/packing/prune.hpp"
#include "normpack/volumetrics/ik.hpp"
#include "normpack/volumetrics/report.hpp"

namespace normpack::harness {

using nlohmann::json;

namespace {

json num(double v) {
  if (std::isfinite(v)) return v;
  return volumetrics::format_double(v);
}

class Stages {
 public:
  explicit Stages(std::vector<StageTiming>& timing) : timing_(timing) {}

  template <class Fn>
  auto run(const std::string& name, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(fn())>) {
        fn();
        finish(name, start);
      } else {
        auto result = fn();
        finish(name, start);
        return result;
      }
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(name, e.what());
    }
  }

 private:
  void finish(const std::string& name, std::chrono::steady_clock::time_point start) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    timing_.push_back({name, dt.count()});
  }
  std::vector<StageTiming>& timing_;
};

json prune_json(const packing::PruneReport& r) {
  return {{"total", r.total},
          {"removed_x1", r.removed_x1},
          {"removed_x2", r.removed_x2},
          {"removed_x3", r.removed_x3},
          {"first_x1", r.first_x1},
          {"first_x2", r.first_x2},
          {"first_x3", r.first_x3},
          {"removed_union", r.removed_union},
          {"retained", r.retained},
          {"s3_pairs", r.s3_pairs},
          {"close_pairs", r.close_pairs},
          {"classified_pairs", r.classified_pairs},
          {"boundary_pairs", r.boundary_pairs},
          {"degree_threshold", num(r.degree_threshold)},
          {"codegree_threshold", num(r.codegree_threshold)},
          {"expected_points", num(r.expected_points)},
          {"expected_x1", num(r.expected_x1)},
          {"expected_x2", num(r.expected_x2)},
          {"expected_s3", num(r.expected_s3)},
          {"bound_x1", num(r.bound_x1)},
          {"bound_x2", num(r.bound_x2)}};
}

}  // namespace

double auto_side(const ExperimentConfig& cfg, double unit_circumradius) {
  const double lambda = std::ldexp(cfg.Delta, -cfg.d);
  const double side = std::pow(cfg.target_points / lambda, 1.0 / cfg.d);
  return std::max(side, 8.0 * unit_circumradius * 1.05);
}

std::string default_output_dir() {
  const char* dir = std::getenv("NORMPACK_OUTPUT_DIR");
  return dir ? dir : "";
}

RunOutcome run_pipeline(const ExperimentConfig& cfg) {
  RunOutcome out;
  Stages stages(out.timing);
  const unsigned workers = std::max(1u, cfg.workers);

  stages.run("config", [&] { validate(cfg); });

  const bodies::ConvexBody body = stages.run("normalize", [&] {
    volumetrics::McOptions mc{cfg.mc_samples, derive_seed(cfg.seed, "normalize"), workers};
    return volumetrics::normalize_with_mc(bodies::make_body(cfg.body), mc);
  });
  out.unit_body = cfg.body;
  out.unit_body.scale = body.scale();

  stages.run("domain", [&] {
    out.domain.d = cfg.d;
    out.domain.L = cfg.L > 0.0 ? cfg.L : auto_side(cfg, body.circumradius());
    out.domain.validate_for(body);
  });
  const packing::TorusDomain& domain = out.domain;

  volumetrics::ClassifierOptions classifier;
  classifier.base_samples = cfg.classifier_samples;
  classifier.max_escalations = cfg.classifier_escalations;
  classifier.workers = workers;

  const volumetrics::IkProfile ik = stages.run("estimate_ik", [&] {
    volumetrics::IkOptions o;
    o.outer_samples = cfg.ik_samples;
    o.classifier = classifier;
    o.seed = derive_seed(cfg.seed, "ik");
    o.workers = workers;
    return volumetrics::estimate_ik(body, cfg.ik_delta, o);
  });

  const packing::PointSet points = stages.run("sample_poisson", [&] {
    return packing::sample_poisson(domain, cfg.Delta, derive_seed(cfg.seed, "poisson"), cfg.max_expected_points);
  });

  const packing::PackingGraph graph =
      stages.run("build_graph", [&] { return packing::build_graph(points, body, domain, workers); });

  const packing::PruneResult pruned = stages.run("prune", [&] {
    packing::PruneOptions o;
    o.classifier = classifier;
    o.seed = derive_seed(cfg.seed, "prune");
    o.workers = workers;
    return packing::prune(graph, points, body, ik, cfg.Delta, cfg.codegree_coeff, domain, o);
  });

  out.retained.d = cfg.d;
  out.retained.seed = points.seed;
  out.retained.intensity = points.intensity;
  for (std::uint32_t i : pruned.kept) {
    const auto c = points.point(i);
    out.retained.coords.insert(out.retained.coords.end(), c.begin(), c.end());
  }

  const packing::DegreeStats pruned_stats =
      stages.run("pruned_stats", [&] { return packing::degree_codegree_stats(pruned.graph); });

  std::vector<std::uint32_t> greedy;
  const indset::LocalSearchResult improved = stages.run("independent_set", [&] {
    const auto policy = indset::parse_order_policy(cfg.order_policy);
    greedy = indset::greedy_independent_set(pruned.graph, policy, derive_seed(cfg.seed, "greedy"));
    return indset::local_search_improve(pruned.graph, greedy, cfg.ls_budget);
  });

  const indset::PackingSummary summary = stages.run("verify_packing", [&] {
    out.centers.d = cfg.d;
    out.centers.seed = points.seed;
    out.centers.intensity = points.intensity;
    for (std::uint32_t v : improved.set) {
      const auto c = points.point(pruned.graph.original_index[v]);
      out.centers.coords.insert(out.centers.coords.end(), c.begin(), c.end());
    }
    return indset::verify_packing(out.centers, body, domain);
  });

  const packing::DegreeStats graph_stats = packing::degree_codegree_stats(graph);
  const double log_ratio = std::log(cfg.Delta) / cfg.Delta;
  const double reference_count = static_cast<double>(pruned.report.retained) * log_ratio;

  json& r = out.record;
  r["config_hash"] = config_hash(cfg);
  r["config"] = canonical_json(cfg);
  r["preconditions"] = {{"d_gt_10", cfg.d > 10},
                        {"Delta_gt_d12", cfg.Delta > std::pow(static_cast<double>(cfg.d), 12.0)},
                        {"Delta_le_Delta_K", cfg.Delta <= ik.delta_k}};
  r["body"] = {{"spec", bodies::to_json(out.unit_body)},
               {"volume", num(body.volume())},
               {"volume_rel_error", num(body.volume_rel_error())},
               {"circumradius", num(body.circumradius())}};
  r["domain"] = {{"d", domain.d}, {"L", num(domain.L)}};
  r["ik"] = {{"delta", num(ik.delta)},
             {"volume", num(ik.volume.value)},
             {"std_error", num(ik.volume.std_error)},
             {"Delta_K", num(ik.delta_k)},
             {"outer", ik.outer},
             {"hits", ik.hits},
             {"boundary", ik.boundary},
             {"region", ik.region},
             {"flag", ik.flag}};
  r["poisson"] = {{"points", points.size()},
                  {"intensity", num(points.intensity)},
                  {"expected", num(points.intensity * domain.volume())}};
  r["graph"] = {{"vertices", graph_stats.vertices},
                {"edges", graph_stats.edges},
                {"max_degree", graph_stats.max_degree},
                {"mean_degree", num(graph_stats.mean_degree)},
                {"max_codegree", graph_stats.max_codegree}};
  r["prune"] = prune_json(pruned.report);
  r["pruned_graph"] = {
      {"vertices", pruned_stats.vertices},
      {"edges", pruned_stats.edges},
      {"max_degree", pruned_stats.max_degree},
      {"max_codegree", pruned_stats.max_codegree},
      {"degree_bound_holds", static_cast<double>(pruned_stats.max_degree + 1) <= pruned.report.degree_threshold},
      {"codegree_bound_holds", static_cast<double>(pruned_stats.max_codegree) < pruned.report.codegree_threshold}};
  r["independent_set"] = {{"policy", cfg.order_policy},
                          {"greedy_size", greedy.size()},
                          {"size", improved.set.size()},
                          {"insertions", improved.insertions},
                          {"swaps", improved.swaps},
                          {"budget_exhausted", improved.budget_exhausted},
                          {"greedy_bound", num(static_cast<double>(pruned_stats.vertices) /
                                               static_cast<double>(pruned_stats.max_degree + 1))}};
  r["packing"] = {{"count", summary.count},
                  {"density", num(summary.density)},
                  {"trivial_density", num(summary.reference_density)},
                  {"reference_count", num(reference_count)},
                  {"reference_density", num(reference_count * body.volume() / domain.volume())},
                  {"achieved_over_reference", num(reference_count > 0 ? summary.count / reference_count : 0.0)},
                  {"min_pair_gauge", num(summary.min_pair_gauge)},
                  {"valid", true}};
  r["status"] = "ok";
  return out;
}

void persist(const RunOutcome& outcome, const ExperimentConfig& cfg) {
  if (cfg.output.empty()) return;
  const std::filesystem::path path(cfg.output);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::app);
  if (!f) throw std::runtime_error("cannot open output file " + cfg.output);
  f << outcome.record.dump() << '\n';
}

}  // namespace normpack::harness
