#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "normpack/packing/graph.hpp"

namespace normpack::indset {

using packing::PackingGraph;

enum class OrderPolicy { Random, MinDegree };

OrderPolicy parse_order_policy(const std::string& name);  // "random" | "min_degree"
const char* to_string(OrderPolicy p);

/// Greedy maximal independent set. Random: scan a seeded permutation.
/// MinDegree: repeatedly take a vertex of least degree in the remaining graph
/// (ties by smallest index), then delete it and its neighbors.
std::vector<std::uint32_t> greedy_independent_set(const PackingGraph& g, OrderPolicy policy, std::uint64_t seed);

struct LocalSearchResult {
  std::vector<std::uint32_t> set;  // sorted
  std::size_t insertions = 0;      // free vertices added
  std::size_t swaps = 0;           // (1,2)-swaps performed
  std::size_t evaluations = 0;     // candidate pairs examined
  bool budget_exhausted = false;   // stopped because swaps reached the budget
};

/// (1,2)-swap local search: replaces a set vertex v by two non-adjacent
/// vertices whose only set neighbor is v, and adds free vertices. Never
/// decreases the size. `budget` caps the number of swaps. Throws
/// std::invalid_argument if `seed_set` is not independent.
LocalSearchResult local_search_improve(const PackingGraph& g, std::vector<std::uint32_t> seed_set, std::size_t budget);

bool is_independent(const PackingGraph& g, std::span<const std::uint32_t> set);

}  // namespace normpack::indset
