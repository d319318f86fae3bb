#pragma once

// Combinatorial optimization kernels used by the exact oracles: maximum
// bipartite matching, min-cost flow, and max flow.

#include <cstdint>
#include <utility>
#include <vector>

namespace hypermono {

/// Hopcroft-Karp maximum matching on a bipartite graph with `left` and
/// `right` vertex counts.
class BipartiteMatcher {
 public:
  BipartiteMatcher(std::uint32_t left, std::uint32_t right);

  void add_edge(std::uint32_t u, std::uint32_t v);

  /// Returns the matching size; afterwards match_of_left() is populated.
  std::uint32_t solve();

  /// Partner of each left vertex, or kNone.
  const std::vector<std::uint32_t>& match_of_left() const { return match_l_; }

  static constexpr std::uint32_t kNone = 0xffffffffu;

 private:
  bool bfs();
  bool dfs(std::uint32_t u);

  std::uint32_t left_;
  std::uint32_t right_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint32_t> match_l_;
  std::vector<std::uint32_t> match_r_;
  std::vector<std::uint32_t> dist_;
};

/// Successive shortest paths with Johnson potentials (Bellman-Ford start,
/// then Dijkstra). Costs may be negative on original arcs; the graph must not
/// contain negative cycles.
class MinCostFlow {
 public:
  explicit MinCostFlow(std::uint32_t nodes);

  /// Returns the arc id.
  std::uint32_t add_arc(std::uint32_t from, std::uint32_t to, std::int64_t cap, std::int64_t cost);

  /// Sends up to `limit` units from s to t along cheapest paths; every
  /// augmentation uses a shortest path, so the result has minimum cost among
  /// flows of the returned value. Returns (flow, cost).
  std::pair<std::int64_t, std::int64_t> solve(std::uint32_t s, std::uint32_t t,
                                              std::int64_t limit);

  std::int64_t flow_on(std::uint32_t arc) const;

 private:
  struct Arc {
    std::uint32_t to;
    std::int64_t cap;
    std::int64_t cost;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::int64_t> original_cap_;
};

/// Dinic max flow on integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(std::uint32_t nodes);

  std::uint32_t add_arc(std::uint32_t from, std::uint32_t to, std::int64_t cap);
  std::int64_t solve(std::uint32_t s, std::uint32_t t);
  std::int64_t flow_on(std::uint32_t arc) const;

  std::uint32_t head(std::uint32_t arc) const { return arcs_[arc].to; }
  const std::vector<std::uint32_t>& out_arcs(std::uint32_t node) const { return out_[node]; }
  /// True for arcs created by add_arc (even ids); odd ids are residual twins.
  static bool is_forward(std::uint32_t arc) { return (arc & 1u) == 0; }

 private:
  bool bfs(std::uint32_t s, std::uint32_t t);
  std::int64_t dfs(std::uint32_t u, std::uint32_t t, std::int64_t pushed);

  struct Arc {
    std::uint32_t to;
    std::int64_t cap;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::int64_t> original_cap_;
  std::vector<std::int32_t> level_;
  std::vector<std::size_t> next_;
};

}  // namespace hypermono
