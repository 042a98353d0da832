#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "normpack/bodies/body_io.hpp"

namespace normpack::harness {

/// One pipeline run. Fields left out of a config file take the desk-scale
/// defaults of desk_defaults(d); `seed` is mandatory.
struct ExperimentConfig {
  bodies::BodySpec body;
  int d = 2;
  double L = 0.0;  // 0 selects the side from target_points ("auto")
  double target_points = 3000.0;
  double Delta = 24.0;
  double ik_delta = 0.9;
  double codegree_coeff = 1.25;
  std::uint64_t mc_samples = 200000;  // volume normalization of bodies without a closed form
  std::uint64_t ik_samples = 1000;
  std::uint64_t classifier_samples = 2000;
  int classifier_escalations = 2;
  std::string order_policy = "min_degree";
  std::uint64_t ls_budget = 100000;
  double max_expected_points = 2e6;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string output;  // JSON-lines file the record is appended to ("" = none)
};

/// Euclidean ball in dimension d with parameters tuned for desk-scale runs.
ExperimentConfig desk_defaults(int d);

/// Throws std::invalid_argument naming the offending field.
void validate(const ExperimentConfig& cfg);

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

/// Config without the fields that cannot change results (workers, output).
nlohmann::json canonical_json(const ExperimentConfig& cfg);
/// 16 hex digits of FNV-1a over canonical_json(cfg).dump().
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace normpack::harness
