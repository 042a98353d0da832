#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "normpack/harness/config.hpp"
#include "normpack/packing/poisson.hpp"
#include "normpack/packing/torus.hpp"

namespace normpack::harness {

/// Failure inside a named pipeline stage.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error("stage " + stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct RunOutcome {
  /// Deterministic record: identical configs give byte-identical dumps
  /// regardless of the worker count.
  nlohmann::json record;
  /// Wall-clock seconds per stage; kept out of the record.
  std::vector<StageTiming> timing;
  bodies::BodySpec unit_body;  // body rescaled to unit volume
  packing::TorusDomain domain;
  packing::PointSet centers;
  packing::PointSet retained;  // points surviving the prune stage
};

/// Side length chosen for L = "auto": expected point count target_points,
/// but never below the no-self-wrap bound.
double auto_side(const ExperimentConfig& cfg, double unit_circumradius);

/// normalize -> validate -> estimate_ik -> sample_poisson -> build_graph ->
/// prune -> independent_set -> verify_packing. Throws StageError.
RunOutcome run_pipeline(const ExperimentConfig& cfg);

/// Appends the record as one JSON line to cfg.output (when set).
void persist(const RunOutcome& outcome, const ExperimentConfig& cfg);

/// Default output directory from NORMPACK_OUTPUT_DIR ("" when unset).
std::string default_output_dir();

}  // namespace normpack::harness
