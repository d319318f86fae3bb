#pragma once

// Consistent pairs, their cover graphs, the conflict-free decomposition of a
// distance class of a violation matching, and vertex-disjoint routing.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hypermono/poset.hpp"

namespace hypermono {

/// Equal-size sets S, T with a bijection s -> phi(s) at distance exactly ell.
class ConsistentPair {
 public:
  /// Throws DomainError unless the endpoints are distinct and every pair is
  /// at distance ell (ell > 0).
  ConsistentPair(const Poset& poset, std::vector<std::pair<Index, Index>> pairs, std::uint32_t ell);

  std::uint32_t ell() const { return ell_; }
  std::size_t size() const { return pairs_.size(); }
  /// Sorted by source.
  const std::vector<std::pair<Index, Index>>& pairs() const { return pairs_; }
  std::vector<Index> S() const;
  std::vector<Index> T() const;

  bool operator==(const ConsistentPair& o) const { return ell_ == o.ell_ && pairs_ == o.pairs_; }

 private:
  std::uint32_t ell_;
  std::vector<std::pair<Index, Index>> pairs_;
};

struct CoverGraph {
  std::uint32_t ell = 0;
  /// levels[j]: sorted vertices z with dist(s,z) = j, dist(z,t) = ell - j for
  /// some s in S, t in T with dist(s,t) = ell. A vertex may sit in several.
  std::vector<std::vector<Index>> levels;
  /// Sorted, without duplicates.
  std::vector<std::pair<Index, Index>> arcs;

  std::vector<Index> vertices() const;
  /// Levels containing v (empty if v is not in the graph).
  std::vector<std::uint32_t> levels_of(Index v) const;
};

/// Level sets only; equivalent to build_cover_graph(...).levels.
std::vector<std::vector<Index>> level_sets(const Poset& poset, const ConsistentPair& pair);

/// Union of all length-ell shortest paths from S to T.
CoverGraph build_cover_graph(const Poset& poset, const ConsistentPair& pair);

/// Every cover vertex on exactly one level and every arc from level j to j+1.
bool is_good(const CoverGraph& g);
bool is_good(const Poset& poset, const ConsistentPair& pair);

/// True iff some vertex lies at the same level of both level structures.
/// Both pair sets must share ell. A shared vertex at level 0 or ell means the
/// sets share an endpoint, which a matching cannot produce; that raises
/// IntegrityError.
bool conflicts(const Poset& poset, const std::vector<std::pair<Index, Index>>& c1,
               const std::vector<std::pair<Index, Index>>& c2, std::uint32_t ell);

/// Starts from singletons and repeatedly merges connected components of the
/// conflict graph until no two sets conflict. Output is ordered by each
/// set's smallest source.
std::vector<ConsistentPair> conflict_free_decompose(const Poset& poset,
                                                    const std::vector<std::pair<Index, Index>>& pairs,
                                                    std::uint32_t ell);

/// True iff the two cover graphs share no vertex.
bool are_independent(const Poset& poset, const ConsistentPair& a, const ConsistentPair& b);
bool are_independent(const CoverGraph& a, const CoverGraph& b);

/// |S| vertex-disjoint length-ell paths inside the cover graph, each from a
/// distinct source to a distinct target, via unit vertex capacities. Throws
/// NotGoodError for non-layered pairs and IntegrityError if the flow falls short.
std::vector<std::vector<Index>> route_disjoint_paths(const Poset& poset, const ConsistentPair& pair);

/// For every ordered pair (u, v) with v reachable from u inside g:
/// outdeg(u) >= outdeg(v) and indeg(u) <= indeg(v).
bool degree_monotonicity_check(const CoverGraph& g);

/// |L_1| >= m or |L_{ell-1}| >= m.
bool layer_size_dichotomy(const CoverGraph& g, std::size_t m);

}  // namespace hypermono
