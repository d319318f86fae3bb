#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <numeric>

#include "hypermono/flow.hpp"
#include "hypermono/rng.hpp"

namespace hypermono {
namespace {

// Largest matching and cheapest perfect assignment by trying every
// permutation of the right side (square instances up to 7 x 7).
struct BruteAssignment {
  std::uint32_t max_matching = 0;
  std::int64_t min_cost_at_max = std::numeric_limits<std::int64_t>::max();
};

BruteAssignment brute(const std::vector<std::vector<std::int64_t>>& cost) {
  const std::size_t n = cost.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BruteAssignment best;
  do {
    std::uint32_t size = 0;
    std::int64_t total = 0;
    for (std::size_t u = 0; u < n; ++u) {
      if (cost[u][perm[u]] >= 0) {
        ++size;
        total += cost[u][perm[u]];
      }
    }
    if (size > best.max_matching) {
      best.max_matching = size;
      best.min_cost_at_max = total;
    } else if (size == best.max_matching) {
      best.min_cost_at_max = std::min(best.min_cost_at_max, total);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TEST(Flow, MatchingAndAssignmentAgreeWithBruteForce) {
  SplitMix64 rng(12);
  for (int round = 0; round < 200; ++round) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(7));
    std::vector<std::vector<std::int64_t>> cost(n, std::vector<std::int64_t>(n, -1));
    BipartiteMatcher hk(n, n);
    MinCostFlow mcf(2 * n + 2);
    const std::uint32_t s = 2 * n;
    const std::uint32_t t = 2 * n + 1;
    for (std::uint32_t u = 0; u < n; ++u) {
      mcf.add_arc(s, u, 1, 0);
      mcf.add_arc(n + u, t, 1, 0);
      for (std::uint32_t v = 0; v < n; ++v) {
        if (rng.below(3) == 0) continue;
        cost[u][v] = static_cast<std::int64_t>(rng.below(20));
        hk.add_edge(u, v);
        // Large constant first maximizes cardinality, then minimizes cost.
        mcf.add_arc(u, n + v, 1, cost[u][v] - 1000);
      }
    }
    const BruteAssignment want = brute(cost);
    EXPECT_EQ(hk.solve(), want.max_matching);
    // Stop once augmenting stops paying off: all path costs are negative here.
    const auto [flow, total] = mcf.solve(s, t, n);
    EXPECT_EQ(static_cast<std::uint32_t>(flow), want.max_matching);
    if (flow > 0) {
      EXPECT_EQ(total + 1000 * flow, want.min_cost_at_max);
    }
  }
}

TEST(Flow, MaxFlowOnSmallNetwork) {
  // Classic 6-node example with max flow 23.
  MaxFlow g(6);
  g.add_arc(0, 1, 16);
  g.add_arc(0, 2, 13);
  g.add_arc(1, 2, 10);
  g.add_arc(2, 1, 4);
  g.add_arc(1, 3, 12);
  g.add_arc(3, 2, 9);
  g.add_arc(2, 4, 14);
  g.add_arc(4, 3, 7);
  g.add_arc(3, 5, 20);
  g.add_arc(4, 5, 4);
  EXPECT_EQ(g.solve(0, 5), 23);
}

}  // namespace
}  // namespace hypermono
