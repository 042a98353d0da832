#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

#include "json.hpp"

namespace normpack::volumetrics {

/// One verifier outcome. Verifiers report counts, never booleans; pass/fail
/// thresholds are applied by the caller.
struct CheckRecord {
  std::string check;
  std::string body;
  int d = 0;
  nlohmann::json params = nlohmann::json::object();
  double value = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  std::uint64_t violations = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";  // "ok" or "inconclusive"
};

nlohmann::json to_json(const CheckRecord& r);

void write_jsonl(std::ostream& out, std::span<const CheckRecord> records);
void write_csv(std::ostream& out, std::span<const CheckRecord> records);

/// Shortest round-trip decimal text for a double ("inf", "-inf", "nan" for
/// non-finite values).
std::string format_double(double v);

}  // namespace normpack::volumetrics
