#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "normpack/harness/config.hpp"

namespace normpack::harness {

struct GridAxis {
  std::string key;  // Delta | d | L | seed | ik_delta | codegree_coeff | target_points
  std::vector<double> values;
};

/// Parses `key=v1,v2,...` or `key=a:b[:step]` axes joined by ';'. The grid is
/// their Cartesian product, first axis slowest.
std::vector<GridAxis> parse_grid(const std::string& spec);

/// Template with one grid point applied. Changing d resizes the body.
ExperimentConfig apply_point(const ExperimentConfig& base, const std::vector<GridAxis>& axes,
                             const std::vector<std::size_t>& index);

struct SweepRow {
  int d = 0;
  double Delta = 0.0;
  double L = 0.0;
  std::uint64_t seed = 0;
  std::size_t points = 0;
  std::size_t retained = 0;
  std::size_t independent = 0;
  double density = 0.0;
  double trivial_bound = 0.0;
  double log_ratio = 0.0;          // log(Delta) / Delta
  double reference_density = 0.0;  // retained log(Delta)/Delta vol(K) / L^d
  std::string status = "ok";       // "ok" or "failed"
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<nlohmann::json> records;  // one per grid point; failures carry status/error
};

/// Runs the pipeline at every grid point. Failures become flagged rows and
/// the sweep continues.
SweepResult sweep(const ExperimentConfig& base, const std::vector<GridAxis>& axes);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace normpack::harness
