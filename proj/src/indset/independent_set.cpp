#include "normpack/indset/independent_set.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "normpack/common/rng.hpp"

namespace normpack::indset {

OrderPolicy parse_order_policy(const std::string& name) {
  if (name == "random") return OrderPolicy::Random;
  if (name == "min_degree") return OrderPolicy::MinDegree;
  throw std::invalid_argument("unknown order policy '" + name + "' (expected random or min_degree)");
}

const char* to_string(OrderPolicy p) { return p == OrderPolicy::Random ? "random" : "min_degree"; }

std::vector<std::uint32_t> greedy_independent_set(const PackingGraph& g, OrderPolicy policy, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint8_t> removed(n, 0);
  std::vector<std::uint32_t> set;
  if (policy == OrderPolicy::Random) {
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    Rng rng = make_rng(derive_seed(seed, "greedy-order"));
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
      std::swap(order[i - 1], order[std::min(j, i - 1)]);
    }
    for (std::uint32_t v : order) {
      if (removed[v]) continue;
      set.push_back(v);
      removed[v] = 1;
      for (std::uint32_t u : g.neighbors_of(v)) removed[u] = 1;
    }
  } else {
    std::vector<std::size_t> deg(n);
    std::set<std::pair<std::size_t, std::uint32_t>> queue;
    for (std::size_t v = 0; v < n; ++v) {
      deg[v] = g.degree(v);
      queue.emplace(deg[v], static_cast<std::uint32_t>(v));
    }
    auto drop = [&](std::uint32_t u) {
      queue.erase({deg[u], u});
      removed[u] = 1;
      for (std::uint32_t w : g.neighbors_of(u)) {
        if (removed[w]) continue;
        queue.erase({deg[w], w});
        queue.emplace(--deg[w], w);
      }
    };
    while (!queue.empty()) {
      const std::uint32_t v = queue.begin()->second;
      set.push_back(v);
      drop(v);
      for (std::uint32_t u : g.neighbors_of(v))
        if (!removed[u]) drop(u);
    }
  }
  std::sort(set.begin(), set.end());
  std::size_t max_deg = 0;
  for (std::size_t v = 0; v < n; ++v) max_deg = std::max(max_deg, g.degree(v));
  if (set.size() * (max_deg + 1) < n) throw std::logic_error("greedy set below n / (max degree + 1)");
  return set;
}

bool is_independent(const PackingGraph& g, std::span<const std::uint32_t> set) {
  std::vector<std::uint8_t> in(g.vertex_count(), 0);
  for (std::uint32_t v : set) {
    if (v >= g.vertex_count() || in[v]) return false;
    in[v] = 1;
  }
  for (std::uint32_t v : set)
    for (std::uint32_t u : g.neighbors_of(v))
      if (in[u]) return false;
  return true;
}

LocalSearchResult local_search_improve(const PackingGraph& g, std::vector<std::uint32_t> seed_set,
                                       std::size_t budget) {
  if (!is_independent(g, seed_set)) throw std::invalid_argument("seed set is not independent");
  const std::size_t n = g.vertex_count();
  LocalSearchResult res;
  std::vector<std::uint8_t> in(n, 0);
  std::vector<std::uint32_t> tight(n, 0);  // number of set neighbors
  auto add = [&](std::uint32_t v) {
    in[v] = 1;
    for (std::uint32_t u : g.neighbors_of(v)) ++tight[u];
  };
  auto remove = [&](std::uint32_t v) {
    in[v] = 0;
    for (std::uint32_t u : g.neighbors_of(v)) --tight[u];
  };
  for (std::uint32_t v : seed_set) add(v);

  // Free vertices first, so every non-set vertex has tightness >= 1.
  auto insert_free = [&](std::uint32_t v) {
    if (!in[v] && tight[v] == 0) {
      add(v);
      ++res.insertions;
    }
  };
  for (std::uint32_t v = 0; v < n; ++v) insert_free(v);

  bool improved = budget > 0;
  res.budget_exhausted = budget == 0;
  std::vector<std::uint32_t> cand;
  while (improved && !res.budget_exhausted) {
    improved = false;
    for (std::uint32_t v = 0; v < n && !res.budget_exhausted; ++v) {
      if (!in[v]) continue;
      cand.clear();
      for (std::uint32_t u : g.neighbors_of(v))
        if (!in[u] && tight[u] == 1) cand.push_back(u);
      bool swapped = false;
      for (std::size_t a = 0; a < cand.size() && !swapped; ++a)
        for (std::size_t b = a + 1; b < cand.size(); ++b) {
          ++res.evaluations;
          if (g.adjacent(cand[a], cand[b])) continue;
          remove(v);
          add(cand[a]);
          add(cand[b]);
          if (tight[cand[a]] != 0 || tight[cand[b]] != 0)
            throw std::logic_error("local search produced a dependent set");
          ++res.swaps;
          // Neighbors of v freed by the swap.
          for (std::uint32_t u : g.neighbors_of(v)) insert_free(u);
          swapped = true;
          if (res.swaps >= budget) res.budget_exhausted = true;
          break;
        }
      improved = improved || swapped;
    }
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (in[v]) res.set.push_back(v);
  return res;
}

}  // namespace normpack::indset
