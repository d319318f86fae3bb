#pragma once

// How the pairs of a violation matching sit relative to one edge matching
// H of the augmented hypergrid: crossing, straight, and skew pairs, the
// dyadic potential built from them, and alternating H/M walks that locate
// violated H-edges.

#include <cstdint>
#include <vector>

#include "hypermono/func.hpp"
#include "hypermono/grid.hpp"
#include "hypermono/oracle.hpp"
#include "hypermono/rational.hpp"

namespace hypermono {

enum class PairClass { Cross, Straight, Skew };

/// Class of x < y with respect to H = H^c_{i,a}. The pair crosses H iff bit a
/// of (y_i - x_i) is set and bit a of x_i equals c: then x is a lower endpoint
/// of H and its H-edge starts a shortest monotone path to y. Otherwise the pair
/// is straight when x and y have the same eligible side of H and skew when not.
PairClass classify_pair(const GridShape& shape, Index x, Index y, const MatchingId& h);

struct PairClassification {
  std::vector<MatchedPair> cross;
  std::vector<MatchedPair> straight;
  std::vector<MatchedPair> skew;
};

PairClassification classify_pairs(const GridShape& shape, const PairMatching& m,
                                  const MatchingId& h);

/// Sum over all H of |cross_H(M)|.
std::uint64_t crossing_total(const GridShape& shape, const PairMatching& m);

/// 1/2^a when x and y have the same eligible side of H^c_{i,a}, else 0.
Rational mu(const GridShape& shape, Index x, Index y, const MatchingId& h);

/// Sum of mu over every pair and every matching H.
Rational potential_phi(const GridShape& shape, const PairMatching& m);

/// Phi of a single pair scaled by n/2 (an integer), usable as a secondary
/// weight for optimal_matching_by.
std::int64_t scaled_phi_weight(const GridShape& shape, Index x, Index y);

enum class WalkEnd {
  /// The last H step was a violated edge.
  HViolation,
  /// An odd-position point is not matched in M by a straight pair.
  StraightUnmatched,
  /// An even-position point has no partner in H (odd matchings near the top
  /// of a line leave some points unmatched).
  HUnmatched,
};

struct AlternatingWalk {
  std::vector<Index> points;
  WalkEnd end = WalkEnd::HViolation;
  /// The violated H-edge (lower, upper) when end == HViolation.
  IndexEdge violation{};
};

/// From the start x of a crossing pair: even steps follow H, odd steps follow
/// a straight pair of M. Checks the period-4 value/side pattern on every
/// point and raises IntegrityError on a violation of it or on a revisit.
AlternatingWalk alternating_sequence(const GridShape& shape, const BitTable& table, Index x,
                                     const MatchingId& h, const PairMatching& m);

struct ViolationCount {
  MatchingId id;
  std::size_t cross = 0;
  /// Largest family of pairwise vertex-disjoint walks ending in HViolation.
  std::size_t disjoint_sequences = 0;
  /// Distinct violated H-edges found as walk terminals.
  std::size_t distinct_violations = 0;
  /// Walks that did not end in an H violation.
  std::size_t other_ends = 0;

  /// disjoint_sequences and distinct_violations both reach ceil(cross / 2).
  bool holds() const {
    const std::size_t need = (cross + 1) / 2;
    return disjoint_sequences >= need && distinct_violations >= need;
  }
};

/// One entry per matching id, in all_matchings order.
std::vector<ViolationCount> violation_counts(const GridShape& shape, const BitTable& table,
                                             const PairMatching& m);

}  // namespace hypermono
