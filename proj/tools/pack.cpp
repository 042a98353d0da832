#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cli_common.hpp"
#include "normpack/harness/pipeline.hpp"
#include "normpack/harness/sweep.hpp"
#include "normpack/indset/verify.hpp"
#include "normpack/packing/graph.hpp"
#include "normpack/volumetrics/estimate.hpp"

using namespace normpack;

namespace {

struct Overrides {
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string output;
};

harness::ExperimentConfig load(const std::string& path, const Overrides& o, const CLI::App& app) {
  harness::ExperimentConfig cfg = harness::load_config(path);
  if (app.count("--seed")) cfg.seed = o.seed;
  if (app.count("--workers")) cfg.workers = o.workers;
  if (app.count("--output")) cfg.output = o.output;
  return cfg;
}

void print_timing(const harness::RunOutcome& out) {
  std::cerr << "timing";
  for (const auto& t : out.timing) std::cerr << ' ' << t.stage << '=' << t.seconds << 's';
  std::cerr << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson-process packing pipeline"};
  app.require_subcommand(1);

  Overrides run_o;
  std::string run_config, packing_out;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run the pipeline once and print its record");
  run->add_option("config", run_config, "Experiment config (JSON)")->required();
  run->add_option("--seed", run_o.seed, "Override the master seed");
  run->add_option("--workers", run_o.workers, "Worker threads (results do not depend on it)");
  run->add_option("--output", run_o.output, "Append the record to this JSON-lines file");
  run->add_option("--packing-out", packing_out, "Write packing centers to this file");
  run->add_flag("--quiet", quiet, "Do not print stage timing");

  Overrides sweep_o;
  std::string sweep_config, grid, csv_path, records_path;
  auto* sw = app.add_subcommand("sweep", "Run the pipeline over a parameter grid");
  sw->add_option("config", sweep_config, "Template config (JSON)")->required();
  sw->add_option("--grid", grid, "Grid, e.g. 'Delta=10,20;d=2:5'")->required();
  sw->add_option("--seed", sweep_o.seed, "Override the master seed");
  sw->add_option("--workers", sweep_o.workers, "Worker threads");
  sw->add_option("--csv", csv_path, "Write the table here instead of stdout");
  sw->add_option("--records", records_path, "Append per-point records to this JSON-lines file");

  std::string graph_points_config, graph_out;
  auto* eg = app.add_subcommand("export-graph", "Sample points and write the intersection graph");
  eg->add_option("config", graph_points_config, "Experiment config (JSON)")->required();
  eg->add_option("--out", graph_out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  return cli::guarded([&]() -> int {
    if (*run) {
      harness::ExperimentConfig cfg = load(run_config, run_o, *run);
      if (cfg.output.empty() && !harness::default_output_dir().empty())
        cfg.output = (std::filesystem::path(harness::default_output_dir()) /
                      ("run-" + harness::config_hash(cfg) + ".jsonl"))
                         .string();
      const harness::RunOutcome out = harness::run_pipeline(cfg);
      harness::persist(out, cfg);
      std::cout << out.record.dump() << '\n';
      if (!packing_out.empty()) {
        std::ofstream f(packing_out);
        if (!f) throw std::runtime_error("cannot open " + packing_out);
        indset::write_packing(f, out.unit_body, out.domain, out.centers);
      }
      if (!quiet) print_timing(out);
      return 0;
    }
    if (*sw) {
      const harness::ExperimentConfig cfg = load(sweep_config, sweep_o, *sw);
      const auto result = harness::sweep(cfg, harness::parse_grid(grid));
      if (csv_path.empty()) {
        harness::write_sweep_csv(std::cout, result.rows);
      } else {
        std::ofstream f(csv_path);
        if (!f) throw std::runtime_error("cannot open " + csv_path);
        harness::write_sweep_csv(f, result.rows);
      }
      if (!records_path.empty()) {
        std::ofstream f(records_path, std::ios::app);
        for (const auto& r : result.records) f << r.dump() << '\n';
      }
      std::size_t failed = 0;
      for (const auto& r : result.rows) failed += r.status != "ok";
      if (failed) std::cerr << failed << " grid point(s) failed\n";
      return 0;
    }
    const harness::ExperimentConfig cfg = harness::load_config(graph_points_config);
    const auto body = volumetrics::normalize_with_mc(bodies::make_body(cfg.body),
                                                     {cfg.mc_samples, derive_seed(cfg.seed, "normalize"), 1});
    packing::TorusDomain domain{cfg.d, cfg.L > 0 ? cfg.L : harness::auto_side(cfg, body.circumradius())};
    const auto points = packing::sample_poisson(domain, cfg.Delta, derive_seed(cfg.seed, "poisson"),
                                                cfg.max_expected_points);
    const auto graph = packing::build_graph(points, body, domain, cfg.workers);
    if (graph_out.empty()) {
      packing::export_graph(std::cout, points, graph);
    } else {
      std::ofstream f(graph_out);
      packing::export_graph(f, points, graph);
    }
    return 0;
  });
}
