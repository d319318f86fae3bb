#pragma once

// Exact desk-scale oracles: violated augmented edges, distance to
// monotonicity, vertex-disjoint violated edges, the distance-optimal
// violation matching, and the isoperimetric ratios built from them.
//
// Every function reads the full truth table and does not touch the query
// counter. Predicate-backed inputs are materialized first (which does count).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hypermono/func.hpp"
#include "hypermono/grid.hpp"
#include "hypermono/rational.hpp"

namespace hypermono {

/// Largest grid the quadratic oracles accept by default.
inline constexpr Index kOracleCapacity = Index{1} << 12;

struct IndexEdge {
  Index lower;
  Index upper;
  bool operator==(const IndexEdge&) const = default;
};

struct ViolatedEdges {
  /// f(lower) = 1, f(upper) = 0.
  std::vector<IndexEdge> minus;
  /// f(lower) = 0, f(upper) = 1.
  std::vector<IndexEdge> plus;
};

/// Scans every pair of points that differ in one coordinate by a power of two
/// (the augmented edges when n is a power of two; the same pair set is used
/// for other n).
ViolatedEdges violated_aug_edges(const GridShape& shape, const BitTable& table);
ViolatedEdges violated_aug_edges(const BoolFunc& f);

/// Bipartite graph from the 1-points to the 0-points with an arc x -> y for
/// every x < y. Arcs are stored as positions into ones/zeros.
struct ViolationGraph {
  std::vector<Index> ones;
  std::vector<Index> zeros;
  std::vector<std::vector<std::uint32_t>> arcs;

  std::uint64_t arc_count() const;
};

ViolationGraph violation_graph(const GridShape& shape, const BitTable& table,
                               Index capacity = kOracleCapacity);

struct MatchedPair {
  Index x;
  Index y;
  std::uint32_t dist;

  bool operator==(const MatchedPair&) const = default;
  auto operator<=>(const MatchedPair&) const = default;
};

struct PairMatching {
  /// Sorted by (x, y).
  std::vector<MatchedPair> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  std::uint64_t total_distance() const;
  std::uint64_t psi() const;
  /// Pairs grouped by distance class.
  std::map<std::uint32_t, std::vector<MatchedPair>> by_distance() const;
};

/// Throws IntegrityError unless every pair is a violation x < y with the
/// recorded directed distance and all endpoints are distinct.
void validate_violation_matching(const GridShape& shape, const BitTable& table,
                                 const PairMatching& m);

struct DistanceResult {
  Rational eps;
  PairMatching witness;
};

/// eps = (maximum violation matching) / n^d.
DistanceResult distance_to_monotonicity(const GridShape& shape, const BitTable& table,
                                        Index capacity = kOracleCapacity);
DistanceResult distance_to_monotonicity(const BoolFunc& f, Index capacity = kOracleCapacity);

/// All monotone tables of a shape with at most kMaxPoints points, found by
/// checking every comparable pair of every table.
class MonotoneCatalog {
 public:
  static constexpr Index kMaxPoints = 20;

  explicit MonotoneCatalog(const GridShape& shape);

  const GridShape& shape() const { return shape_; }
  const std::vector<std::uint32_t>& tables() const { return tables_; }

  /// Minimum Hamming distance from `table` to a monotone table, over n^d.
  Rational distance(std::uint32_t table) const;

 private:
  GridShape shape_;
  std::vector<std::uint32_t> tables_;
};

/// Low n^d bits of the table as an integer mask (n^d <= 32).
std::uint32_t table_mask(const BitTable& table);

/// Exhaustive minimum-changes distance; n^d <= MonotoneCatalog::kMaxPoints.
Rational brute_force_distance(const BoolFunc& f);

struct GammaResult {
  Rational gamma;
  std::vector<IndexEdge> witness;
};

/// Maximum set of vertex-disjoint violated augmented edges, over n^d.
GammaResult gamma_minus(const GridShape& shape, const BitTable& table);
GammaResult gamma_minus(const BoolFunc& f);

struct OptimalMatching {
  PairMatching mstar;
  /// Average matched distance; 0 when the matching is empty.
  Rational r;
  std::uint64_t psi = 0;
};

/// A maximum violation matching minimizing the total directed distance and,
/// among those, maximizing the sum of squared distances. Solved as one
/// min-cost flow with arc cost d*K - d^2, K = 1 + |V| * (max d)^2.
OptimalMatching optimal_matching(const GridShape& shape, const BitTable& table,
                                 Index capacity = kOracleCapacity);
OptimalMatching optimal_matching(const BoolFunc& f, Index capacity = kOracleCapacity);

/// Nonnegative secondary objective of a violating pair (x, y) at distance dist.
using PairWeight = std::function<std::int64_t(Index x, Index y, std::uint32_t dist)>;

/// A maximum violation matching minimizing the total directed distance and,
/// among those, maximizing the summed secondary weight (d*d gives
/// optimal_matching).
OptimalMatching optimal_matching_by(const GridShape& shape, const BitTable& table,
                                    const PairWeight& secondary,
                                    Index capacity = kOracleCapacity);

struct InfluenceReport {
  Index points = 0;
  std::uint64_t s_minus = 0;
  std::uint64_t s_plus = 0;
  std::uint64_t gamma_count = 0;
  std::uint64_t matching_size = 0;
  std::uint64_t total_distance = 0;

  Rational I;
  Rational I_plus;
  Rational I_minus;
  Rational gamma_minus;
  Rational eps;
  Rational r;

  /// I- * G- / eps^2, I- / (r * eps), G- * r / eps; present iff eps > 0.
  std::optional<Rational> margulis;
  std::optional<Rational> edge_ratio;
  std::optional<Rational> vertex_ratio;
};

InfluenceReport isoperimetry_report(const GridShape& shape, const BitTable& table,
                                    Index capacity = kOracleCapacity);
InfluenceReport isoperimetry_report(const BoolFunc& f, Index capacity = kOracleCapacity);

struct InfluenceBound {
  bool applicable = false;
  bool holds = true;
  Rational I;
  Rational I_minus;
};

/// applicable iff I- < sqrt(d); holds iff I < 7 sqrt(d) log2 n. Both
/// comparisons are made on squared integers. Requires n a power of two, n >= 4.
InfluenceBound influence_bound_check(const GridShape& shape, const BitTable& table);
InfluenceBound influence_bound_check(const BoolFunc& f);

}  // namespace hypermono
