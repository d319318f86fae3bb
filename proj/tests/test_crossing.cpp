#include <gtest/gtest.h>

#include <algorithm>

#include "hypermono/crossing.hpp"
#include "hypermono/error.hpp"
#include "hypermono/oracle.hpp"
#include "hypermono/rng.hpp"
#include "support.hpp"

namespace hypermono {
namespace {

// x's own H-edge begins a shortest path to y: checked by breadth-first
// distances rather than by the bit characterization.
bool crosses_by_paths(const GridShape& s, Index x, Index y, const MatchingId& h) {
  const MatchRole role = classify_in_matching(s, point_of(s, x), h);
  if (role.side != Side::Lower) return false;
  const Index next = linear_index(s, *role.partner);
  const auto total = testing::bfs_distance(s, x, y);
  const auto rest = testing::bfs_distance(s, next, y);
  return total && rest && *rest + 1 == *total;
}

PairMatching matching_of(std::vector<MatchedPair> pairs) {
  PairMatching m;
  m.pairs = std::move(pairs);
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

TEST(Crossing, LineExamples) {
  const GridShape s(4, 1);
  EXPECT_EQ(classify_pair(s, 0, 2, {0, 1, 0}), PairClass::Cross);
  EXPECT_EQ(classify_pair(s, 0, 2, {0, 0, 0}), PairClass::Straight);
}

TEST(Crossing, AgreesWithPathEnumeration) {
  for (auto [n, d] : {std::pair{8u, 1u}, std::pair{4u, 2u}, std::pair{2u, 3u}}) {
    const GridShape s(n, d);
    for (Index x = 0; x < s.size(); ++x) {
      for (Index y = 0; y < s.size(); ++y) {
        if (compare(s, x, y) != Order::Less) continue;
        for (const MatchingId& h : all_matchings(s)) {
          EXPECT_EQ(classify_pair(s, x, y, h) == PairClass::Cross, crosses_by_paths(s, x, y, h))
              << x << " " << y << " " << to_string(h);
        }
      }
    }
  }
}

TEST(Crossing, ClassesPartitionAndCountDistance) {
  const GridShape s(4, 2);
  for (std::uint64_t k = 0; k < 100; ++k) {
    SplitMix64 rng(k);
    BitTable t(s.size());
    for (Index x = 0; x < s.size(); ++x) t.set(x, rng.coin());
    const PairMatching m = optimal_matching(s, t).mstar;
    for (const MatchingId& h : all_matchings(s)) {
      const PairClassification c = classify_pairs(s, m, h);
      EXPECT_EQ(c.cross.size() + c.straight.size() + c.skew.size(), m.size());
    }
    EXPECT_EQ(crossing_total(s, m), m.total_distance());
  }
}

TEST(Potential, SinglePairOnLine) {
  const GridShape s(4, 1);
  EXPECT_EQ(mu(s, 0, 2, {0, 0, 0}), Rational(1));
  EXPECT_EQ(mu(s, 0, 2, {0, 0, 1}), Rational(1));
  EXPECT_EQ(mu(s, 0, 2, {0, 1, 0}), Rational(0));
  EXPECT_EQ(mu(s, 0, 2, {0, 1, 1}), Rational(0));
  EXPECT_EQ(potential_phi(s, matching_of({{0, 2, 1}})), Rational(2));
  EXPECT_EQ(scaled_phi_weight(s, 0, 2), 4);
  EXPECT_EQ(potential_phi(s, PairMatching{}), Rational(0));
}

TEST(Potential, SetSemantics) {
  const GridShape s(8, 1);
  const PairMatching a = matching_of({{0, 5, 2}, {1, 3, 1}});
  const PairMatching b = matching_of({{1, 3, 1}, {0, 5, 2}});
  EXPECT_EQ(potential_phi(s, a), potential_phi(s, b));
  Rational sum(0);
  for (const auto& p : a.pairs) {
    sum += Rational(scaled_phi_weight(s, p.x, p.y)) / Rational(4);
  }
  EXPECT_EQ(sum, potential_phi(s, a));
}

TEST(AlternatingWalk, ViolatedPairEndsImmediately) {
  const GridShape s(4, 1);
  const BitTable t = testing::table_of({1, 1, 0, 0});
  const PairMatching m = matching_of({{0, 2, 1}, {1, 3, 1}});
  const MatchingId h{0, 1, 0};
  for (Index x : {Index{0}, Index{1}}) {
    const AlternatingWalk w = alternating_sequence(s, t, x, h, m);
    EXPECT_EQ(w.end, WalkEnd::HViolation);
    EXPECT_EQ(w.points, (std::vector<Index>{x, x + 2}));
    EXPECT_EQ(w.violation, (IndexEdge{x, x + 2}));
  }
  const auto counts = violation_counts(s, t, m);
  const auto it = std::find_if(counts.begin(), counts.end(),
                               [&](const ViolationCount& c) { return c.id == h; });
  ASSERT_NE(it, counts.end());
  EXPECT_EQ(it->cross, 2u);
  EXPECT_EQ(it->disjoint_sequences, 2u);
  EXPECT_TRUE(it->holds());
  EXPECT_THROW(alternating_sequence(s, t, 0, {0, 0, 0}, m), DomainError);
}

TEST(AlternatingWalk, WalksAlternateBetweenHAndM) {
  const GridShape s(8, 2);
  for (std::uint64_t k = 0; k < 40; ++k) {
    const BitTable t = materialize(generate(Family::NoisyMonotone, s, {}, k));
    const PairMatching m = optimal_matching(s, t).mstar;
    for (const MatchingId& h : all_matchings(s)) {
      for (const MatchedPair& p : classify_pairs(s, m, h).cross) {
        const AlternatingWalk w = alternating_sequence(s, t, p.x, h, m);
        for (std::size_t j = 0; j + 1 < w.points.size(); ++j) {
          const Index a = w.points[j];
          const Index b = w.points[j + 1];
          if (j % 2 == 0) {
            const MatchRole r = classify_in_matching(s, point_of(s, a), h);
            ASSERT_TRUE(r.partner.has_value());
            EXPECT_EQ(linear_index(s, *r.partner), b);
          } else {
            const bool matched = std::any_of(m.pairs.begin(), m.pairs.end(), [&](const MatchedPair& q) {
              return (q.x == a && q.y == b) || (q.x == b && q.y == a);
            });
            EXPECT_TRUE(matched);
          }
        }
        if (w.end == WalkEnd::HViolation) {
          EXPECT_TRUE(t.get(w.violation.lower));
          EXPECT_FALSE(t.get(w.violation.upper));
        }
      }
    }
    for (const ViolationCount& c : violation_counts(s, t, m)) EXPECT_TRUE(c.holds()) << k;
  }
}

}  // namespace
}  // namespace hypermono
