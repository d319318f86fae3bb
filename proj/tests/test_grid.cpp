#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "hypermono/error.hpp"
#include "hypermono/grid.hpp"
#include "support.hpp"

namespace hypermono {
namespace {

TEST(Grid, LinearIndexExamples) {
  const GridShape s(4, 2);
  EXPECT_EQ(linear_index(s, Point{0, 0}), 0u);
  EXPECT_EQ(linear_index(s, Point{3, 3}), 15u);
  EXPECT_EQ(linear_index(s, Point{1, 2}), 9u);
}

TEST(Grid, IndexRoundTrip) {
  for (auto [n, d] : {std::pair{3u, 3u}, std::pair{4u, 2u}, std::pair{5u, 2u}}) {
    const GridShape s(n, d);
    for (Index k = 0; k < s.size(); ++k) {
      EXPECT_EQ(linear_index(s, point_of(s, k)), k);
    }
  }
}

TEST(Grid, RejectsBadShapesAndPoints) {
  EXPECT_THROW(GridShape(0, 2), DomainError);
  EXPECT_THROW(GridShape(2, 0), DomainError);
  EXPECT_THROW(GridShape(3, 2).log_n(), DomainError);
  EXPECT_THROW(linear_index(GridShape(4, 2), Point{4, 0}), DomainError);
  EXPECT_THROW(linear_index(GridShape(4, 2), Point{1}), DomainError);
}

TEST(Grid, ClassifyExamples) {
  const GridShape s(8, 1);
  const MatchRole a = classify_in_matching(s, Point{0}, {0, 0, 0});
  EXPECT_EQ(a.side, Side::Lower);
  EXPECT_EQ(a.partner, Point{1});
  EXPECT_EQ(classify_in_matching(s, Point{4}, {0, 2, 1}).side, Side::Unmatched);
  const MatchRole c = classify_in_matching(s, Point{1}, {0, 0, 1});
  EXPECT_EQ(c.side, Side::Lower);
  EXPECT_EQ(c.partner, Point{2});
}

TEST(Grid, EnumerateMatchingExamples) {
  const GridShape s(8, 1);
  std::vector<std::pair<Coord, Coord>> got;
  for (const AugEdge& e : enumerate_matching(s, {0, 0, 0})) got.emplace_back(e.lower[0], e.upper[0]);
  EXPECT_EQ(got, (std::vector<std::pair<Coord, Coord>>{{0, 1}, {2, 3}, {4, 5}, {6, 7}}));
  EXPECT_TRUE(enumerate_matching(s, {0, 2, 1}).empty());
  const auto two = enumerate_matching(GridShape(2, 1), {0, 0, 0});
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].lower, Point{0});
  EXPECT_EQ(two[0].upper, Point{1});
}

TEST(Grid, EdgeCountExamples) {
  EXPECT_EQ(augmented_edge_count(GridShape(8, 1)), 17u);
  EXPECT_EQ(augmented_edge_count(GridShape(2, 3)), 12u);
  EXPECT_EQ(augmented_edge_count(GridShape(4, 2)), 40u);
}

// The matchings partition the augmented edges, each edge appearing once.
TEST(Grid, MatchingsPartitionAugmentedEdges) {
  for (auto [n, d] : {std::pair{8u, 1u}, std::pair{4u, 2u}, std::pair{2u, 3u}, std::pair{8u, 2u}}) {
    const GridShape s(n, d);
    std::multiset<std::pair<Index, Index>> seen;
    std::set<Index> endpoints;
    for (const MatchingId& m : all_matchings(s)) {
      endpoints.clear();
      for (const AugEdge& e : enumerate_matching(s, m)) {
        const Index lo = linear_index(s, e.lower);
        const Index hi = linear_index(s, e.upper);
        seen.emplace(lo, hi);
        EXPECT_TRUE(endpoints.insert(lo).second);
        EXPECT_TRUE(endpoints.insert(hi).second);
      }
    }
    const auto brute = testing::brute_augmented_pairs(s);
    EXPECT_EQ(seen.size(), brute.size());
    const std::multiset<std::pair<Index, Index>> expected(brute.begin(), brute.end());
    EXPECT_EQ(expected, seen);
    EXPECT_EQ(augmented_edge_count(s), brute.size());
  }
}

TEST(Grid, AugmentedPairsMatchBruteForceForAnyN) {
  for (auto [n, d] : {std::pair{3u, 2u}, std::pair{5u, 1u}, std::pair{6u, 2u}}) {
    const GridShape s(n, d);
    std::vector<std::pair<Index, Index>> got;
    for_each_augmented_pair(s, [&](Index lo, Index hi, std::uint32_t, std::uint32_t) {
      got.emplace_back(lo, hi);
    });
    auto brute = testing::brute_augmented_pairs(s);
    std::sort(got.begin(), got.end());
    std::sort(brute.begin(), brute.end());
    EXPECT_EQ(got, brute);
  }
}

TEST(Grid, CompareExamples) {
  EXPECT_EQ(compare(Point{0, 0}, Point{1, 2}), Order::Less);
  EXPECT_EQ(compare(Point{1, 2}, Point{0, 0}), Order::Greater);
  EXPECT_EQ(compare(Point{1, 0}, Point{0, 1}), Order::Incomparable);
  EXPECT_EQ(compare(Point{2, 3}, Point{2, 3}), Order::Equal);
  EXPECT_THROW(compare(Point{1}, Point{1, 2}), DomainError);
}

TEST(Grid, DirectedDistanceExamples) {
  EXPECT_EQ(directed_distance(GridShape(8, 1), Point{0}, Point{7}), 3u);
  EXPECT_EQ(directed_distance(GridShape(8, 1), Point{5}, Point{5}), 0u);
  EXPECT_EQ(directed_distance(GridShape(8, 2), Point{0, 3}, Point{4, 3}), 1u);
  EXPECT_EQ(directed_distance(GridShape(8, 2), Point{1, 3}, Point{0, 4}), std::nullopt);
}

TEST(Grid, DirectedDistanceMatchesBfs) {
  for (auto [n, d] : {std::pair{8u, 1u}, std::pair{4u, 2u}, std::pair{3u, 2u}, std::pair{6u, 1u}}) {
    const GridShape s(n, d);
    for (Index u = 0; u < s.size(); ++u) {
      for (Index v = 0; v < s.size(); ++v) {
        EXPECT_EQ(directed_distance(s, u, v), testing::bfs_distance(s, u, v)) << u << " " << v;
      }
    }
  }
}

}  // namespace
}  // namespace hypermono
