#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "hypermono/error.hpp"
#include "hypermono/oracle.hpp"
#include "hypermono/rng.hpp"
#include "support.hpp"

namespace hypermono {
namespace {

using testing::line_function;
using testing::table_of;

bool pairwise_monotone(const GridShape& s, std::uint64_t mask) {
  for (Index x = 0; x < s.size(); ++x) {
    for (Index y = 0; y < s.size(); ++y) {
      if (compare(s, x, y) == Order::Less && ((mask >> x) & 1u) && !((mask >> y) & 1u)) return false;
    }
  }
  return true;
}

// Fewest changed values over all monotone tables, found without the catalog.
std::vector<std::uint32_t> brute_changes(const GridShape& s) {
  const std::uint64_t count = std::uint64_t{1} << s.size();
  std::vector<std::uint64_t> monotone;
  for (std::uint64_t m = 0; m < count; ++m) {
    if (pairwise_monotone(s, m)) monotone.push_back(m);
  }
  std::vector<std::uint32_t> out(count);
  for (std::uint64_t m = 0; m < count; ++m) {
    std::uint32_t best = 64;
    for (std::uint64_t g : monotone) {
      best = std::min<std::uint32_t>(best, static_cast<std::uint32_t>(__builtin_popcountll(m ^ g)));
    }
    out[m] = best;
  }
  return out;
}

// Largest set of vertex-disjoint edges by exhaustive search.
std::size_t brute_disjoint(const std::vector<IndexEdge>& edges, std::size_t from,
                           std::vector<bool>& used) {
  if (from == edges.size()) return 0;
  std::size_t best = brute_disjoint(edges, from + 1, used);
  const IndexEdge& e = edges[from];
  if (!used[e.lower] && !used[e.upper]) {
    used[e.lower] = used[e.upper] = true;
    best = std::max(best, 1 + brute_disjoint(edges, from + 1, used));
    used[e.lower] = used[e.upper] = false;
  }
  return best;
}

struct Lex {
  std::size_t size = 0;
  std::uint64_t dist = 0;
  std::uint64_t psi = 0;
};

// Best (max size, min total distance, max psi) over every violation matching.
Lex brute_optimal(const GridShape& s, const BitTable& t) {
  std::vector<Index> ones;
  for (Index x = 0; x < s.size(); ++x) {
    if (t.get(x)) ones.push_back(x);
  }
  std::vector<bool> taken(s.size(), false);
  Lex best;
  std::function<void(std::size_t, Lex)> go = [&](std::size_t k, Lex cur) {
    if (k == ones.size()) {
      const bool better = cur.size > best.size ||
                          (cur.size == best.size &&
                           (cur.dist < best.dist || (cur.dist == best.dist && cur.psi > best.psi)));
      if (better) best = cur;
      return;
    }
    go(k + 1, cur);
    for (Index y = 0; y < s.size(); ++y) {
      if (taken[y] || t.get(y) || compare(s, ones[k], y) != Order::Less) continue;
      const std::uint32_t d = *directed_distance(s, ones[k], y);
      taken[y] = true;
      go(k + 1, Lex{cur.size + 1, cur.dist + d, cur.psi + std::uint64_t{d} * d});
      taken[y] = false;
    }
  };
  go(0, Lex{});
  return best;
}

TEST(ViolatedEdges, LineExample) {
  const ViolatedEdges v = violated_aug_edges(line_function({1, 1, 0, 0}));
  std::vector<std::pair<Index, Index>> got;
  for (const auto& e : v.minus) got.emplace_back(e.lower, e.upper);
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::pair<Index, Index>>{{0, 2}, {1, 2}, {1, 3}}));
  EXPECT_TRUE(v.plus.empty());
  const InfluenceReport rep = isoperimetry_report(line_function({1, 1, 0, 0}));
  EXPECT_EQ(rep.I_minus, Rational(3, 4));
}

TEST(ViolatedEdges, MonotoneAndConstant) {
  EXPECT_TRUE(violated_aug_edges(line_function({0, 0, 1, 1})).minus.empty());
  const ViolatedEdges c = violated_aug_edges(line_function({1, 1, 1, 1}));
  EXPECT_TRUE(c.minus.empty());
  EXPECT_TRUE(c.plus.empty());
}

TEST(Distance, Examples) {
  const DistanceResult a = distance_to_monotonicity(line_function({1, 1, 0, 0}));
  EXPECT_EQ(a.eps, Rational(1, 2));
  EXPECT_EQ(a.witness.size(), 2u);
  EXPECT_EQ(distance_to_monotonicity(line_function({0, 1, 1, 1})).eps, Rational(0));
  EXPECT_EQ(distance_to_monotonicity(line_function({1, 0, 0, 0})).eps, Rational(1, 4));
}

TEST(Distance, MatchesIndependentBruteForce) {
  for (auto [n, d] : {std::pair{2u, 2u}, std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{4u, 1u},
                      std::pair{5u, 1u}}) {
    const GridShape s(n, d);
    const auto changes = brute_changes(s);
    for (std::uint64_t m = 0; m < changes.size(); ++m) {
      const BitTable t = BitTable::from_mask(m, s.size());
      const DistanceResult r = distance_to_monotonicity(s, t);
      EXPECT_EQ(r.eps, Rational(changes[m], static_cast<std::int64_t>(s.size())));
      EXPECT_NO_THROW(validate_violation_matching(s, t, r.witness));
    }
  }
}

TEST(Distance, CatalogCountsMonotoneTables) {
  // Monotone functions on a k x l grid are lattice paths: C(k + l, k).
  EXPECT_EQ(MonotoneCatalog(GridShape(4, 2)).tables().size(), 70u);
  EXPECT_EQ(MonotoneCatalog(GridShape(3, 2)).tables().size(), 20u);
  EXPECT_EQ(MonotoneCatalog(GridShape(2, 3)).tables().size(), 20u);
  EXPECT_EQ(brute_force_distance(line_function({1, 1, 0, 0})), Rational(1, 2));
}

TEST(Distance, ValidateRejectsBadMatchings) {
  const GridShape s(4, 1);
  const BitTable t = table_of({1, 1, 0, 0});
  PairMatching bad;
  bad.pairs = {{0, 2, 1}, {0, 3, 2}};
  EXPECT_THROW(validate_violation_matching(s, t, bad), IntegrityError);
  PairMatching wrong_dist;
  wrong_dist.pairs = {{0, 3, 1}};
  EXPECT_THROW(validate_violation_matching(s, t, wrong_dist), IntegrityError);
  PairMatching not_violated;
  not_violated.pairs = {{2, 3, 1}};
  EXPECT_THROW(validate_violation_matching(s, t, not_violated), IntegrityError);
}

TEST(Distance, RespectsCapacity) {
  const BoolFunc f = generate(Family::UniformRandom, GridShape(8, 4), {}, 1);
  EXPECT_THROW(distance_to_monotonicity(f, 1024), CapacityError);
}

TEST(Gamma, Examples) {
  EXPECT_EQ(gamma_minus(line_function({1, 1, 0, 0})).gamma, Rational(1, 2));
  EXPECT_EQ(gamma_minus(line_function({0, 0, 1, 1})).gamma, Rational(0));
  EXPECT_EQ(gamma_minus(line_function({1, 0, 0, 0})).gamma, Rational(1, 4));
}

TEST(Gamma, MatchesExhaustiveSearch) {
  for (auto [n, d] : {std::pair{4u, 2u}, std::pair{8u, 1u}, std::pair{3u, 2u}}) {
    const GridShape s(n, d);
    for (std::uint64_t k = 0; k < 150; ++k) {
      SplitMix64 rng(k);
      BitTable t(s.size());
      for (Index x = 0; x < s.size(); ++x) t.set(x, rng.coin());
      const auto minus = violated_aug_edges(s, t).minus;
      std::vector<bool> used(s.size(), false);
      const GammaResult g = gamma_minus(s, t);
      EXPECT_EQ(g.witness.size(), brute_disjoint(minus, 0, used));
      EXPECT_EQ(g.gamma, Rational(static_cast<std::int64_t>(g.witness.size()),
                                  static_cast<std::int64_t>(s.size())));
    }
  }
}

TEST(OptimalMatching, LineExample) {
  const OptimalMatching m = optimal_matching(line_function({1, 1, 0, 0}));
  EXPECT_EQ(m.mstar.pairs, (std::vector<MatchedPair>{{0, 2, 1}, {1, 3, 1}}));
  EXPECT_EQ(m.r, Rational(1));
  EXPECT_EQ(m.psi, 2u);
  const OptimalMatching none = optimal_matching(line_function({0, 1, 1, 1}));
  EXPECT_TRUE(none.mstar.empty());
  EXPECT_EQ(none.r, Rational(0));
}

TEST(OptimalMatching, LexicographicObjectiveMatchesExhaustiveSearch) {
  for (auto [n, d] : {std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{4u, 2u}, std::pair{8u, 1u},
                      std::pair{12u, 1u}}) {
    const GridShape s(n, d);
    for (std::uint64_t k = 0; k < 60; ++k) {
      SplitMix64 rng(1000 + k);
      BitTable t(s.size());
      for (Index x = 0; x < s.size(); ++x) t.set(x, rng.coin());
      if (s.size() > 12 && t.count_ones() > 8) continue;
      const OptimalMatching m = optimal_matching(s, t);
      const Lex want = brute_optimal(s, t);
      EXPECT_EQ(m.mstar.size(), want.size);
      EXPECT_EQ(m.mstar.total_distance(), want.dist);
      EXPECT_EQ(m.psi, want.psi);
      EXPECT_NO_THROW(validate_violation_matching(s, t, m.mstar));
    }
  }
}

TEST(Isoperimetry, Examples) {
  const InfluenceReport a = isoperimetry_report(line_function({1, 1, 0, 0}));
  ASSERT_TRUE(a.margulis.has_value());
  EXPECT_EQ(*a.margulis, Rational(3, 2));
  const InfluenceReport b = isoperimetry_report(line_function({1, 0, 0, 0}));
  EXPECT_EQ(b.I_minus, Rational(1, 2));
  EXPECT_EQ(*b.margulis, Rational(2));
  const InfluenceReport c = isoperimetry_report(line_function({0, 0, 1, 1}));
  EXPECT_EQ(c.eps, Rational(0));
  EXPECT_FALSE(c.margulis.has_value());
  EXPECT_FALSE(c.edge_ratio.has_value());
  EXPECT_FALSE(c.vertex_ratio.has_value());
}

TEST(Isoperimetry, RatiosFollowDefinitions) {
  const GridShape s(4, 2);
  for (std::uint64_t k = 0; k < 200; ++k) {
    SplitMix64 rng(k);
    BitTable t(s.size());
    for (Index x = 0; x < s.size(); ++x) t.set(x, rng.coin());
    const InfluenceReport r = isoperimetry_report(s, t);
    if (!r.margulis) continue;
    EXPECT_EQ(*r.margulis, r.I_minus * r.gamma_minus / (r.eps * r.eps));
    EXPECT_EQ(*r.edge_ratio, r.I_minus / (r.r * r.eps));
    EXPECT_EQ(*r.vertex_ratio, r.gamma_minus * r.r / r.eps);
    EXPECT_EQ(r.I, r.I_plus + r.I_minus);
  }
}

TEST(InfluenceBound, ConstantAndSampledFunctions) {
  const InfluenceBound c = influence_bound_check(line_function({1, 1, 1, 1}));
  EXPECT_TRUE(c.applicable);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.I, Rational(0));
  const GridShape s(8, 3);
  for (std::uint64_t k = 0; k < 10000; ++k) {
    const Family fam = k % 2 ? Family::UniformRandom : Family::NoisyMonotone;
    const InfluenceBound b = influence_bound_check(generate(fam, s, {}, k));
    if (b.applicable) {
      EXPECT_TRUE(b.holds) << k;
    }
  }
  EXPECT_THROW(influence_bound_check(line_function({1, 0})), DomainError);
}

}  // namespace
}  // namespace hypermono
