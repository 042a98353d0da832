#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normpack/volumetrics/report.hpp"

namespace normpack::harness {

enum class SuiteLevel { Fast, Full };

SuiteLevel parse_level(const std::string& name);  // "fast" | "full"

struct SuiteReport {
  std::vector<volumetrics::CheckRecord> records;
  std::size_t violations = 0;    // records with violations > 0
  std::size_t inconclusive = 0;  // records with status "inconclusive"
  bool passed() const { return violations == 0 && inconclusive == 0; }
};

/// Runs the verifiers selected by `which`: all | schmuck | logconcavity |
/// petty | rs | minkowski | poisson. Verdicts are report content.
SuiteReport verify_suite(const std::string& which, SuiteLevel level, std::uint64_t seed, unsigned workers);

}  // namespace normpack::harness
