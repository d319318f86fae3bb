#include "hypermono/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "hypermono/error.hpp"
#include "hypermono/flow.hpp"

namespace hypermono {

namespace {

BitTable table_of(const BoolFunc& f, Index capacity) {
  if (f.shape().size() > capacity) {
    throw CapacityError("exact oracle over " + f.shape().to_string() + " exceeds capacity " +
                        std::to_string(capacity) + " points");
  }
  return f.is_table_backed() ? f.table() : materialize(f, capacity);
}

void check_capacity(const GridShape& shape, Index capacity) {
  if (shape.size() > capacity) {
    throw CapacityError("exact oracle over " + shape.to_string() + " exceeds capacity " +
                        std::to_string(capacity) + " points");
  }
}

Rational ratio(std::uint64_t num, std::uint64_t den) {
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

ViolatedEdges violated_aug_edges(const GridShape& shape, const BitTable& table) {
  if (table.size() != shape.size()) throw DomainError("table does not match shape");
  ViolatedEdges out;
  for_each_augmented_pair(shape, [&](Index lo, Index hi, std::uint32_t, std::uint32_t) {
    const bool a = table.get(lo);
    const bool b = table.get(hi);
    if (a && !b) out.minus.push_back({lo, hi});
    if (!a && b) out.plus.push_back({lo, hi});
  });
  return out;
}

ViolatedEdges violated_aug_edges(const BoolFunc& f) {
  return violated_aug_edges(f.shape(), table_of(f, kDefaultTableCapacity));
}

std::uint64_t ViolationGraph::arc_count() const {
  std::uint64_t c = 0;
  for (const auto& a : arcs) c += a.size();
  return c;
}

ViolationGraph violation_graph(const GridShape& shape, const BitTable& table, Index capacity) {
  check_capacity(shape, capacity);
  if (table.size() != shape.size()) throw DomainError("table does not match shape");
  ViolationGraph g;
  for (Index k = 0; k < shape.size(); ++k) (table.get(k) ? g.ones : g.zeros).push_back(k);
  g.arcs.resize(g.ones.size());
  for (std::size_t u = 0; u < g.ones.size(); ++u) {
    for (std::size_t v = 0; v < g.zeros.size(); ++v) {
      if (compare(shape, g.ones[u], g.zeros[v]) == Order::Less) {
        g.arcs[u].push_back(static_cast<std::uint32_t>(v));
      }
    }
  }
  return g;
}

std::uint64_t PairMatching::total_distance() const {
  std::uint64_t s = 0;
  for (const auto& p : pairs) s += p.dist;
  return s;
}

std::uint64_t PairMatching::psi() const {
  std::uint64_t s = 0;
  for (const auto& p : pairs) s += std::uint64_t{p.dist} * p.dist;
  return s;
}

std::map<std::uint32_t, std::vector<MatchedPair>> PairMatching::by_distance() const {
  std::map<std::uint32_t, std::vector<MatchedPair>> out;
  for (const auto& p : pairs) out[p.dist].push_back(p);
  return out;
}

void validate_violation_matching(const GridShape& shape, const BitTable& table,
                                 const PairMatching& m) {
  std::vector<Index> seen;
  for (const auto& p : m.pairs) {
    if (p.x >= shape.size() || p.y >= shape.size()) {
      throw IntegrityError("matched point out of range");
    }
    if (!table.get(p.x) || table.get(p.y)) throw IntegrityError("matched pair is not a violation");
    if (compare(shape, p.x, p.y) != Order::Less) throw IntegrityError("matched pair not ordered");
    if (directed_distance(shape, p.x, p.y) != p.dist) {
      throw IntegrityError("matched pair has a wrong recorded distance");
    }
    seen.push_back(p.x);
    seen.push_back(p.y);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw IntegrityError("matching pairs share an endpoint");
  }
}

DistanceResult distance_to_monotonicity(const GridShape& shape, const BitTable& table,
                                        Index capacity) {
  const ViolationGraph g = violation_graph(shape, table, capacity);
  BipartiteMatcher hk(static_cast<std::uint32_t>(g.ones.size()),
                      static_cast<std::uint32_t>(g.zeros.size()));
  for (std::uint32_t u = 0; u < g.arcs.size(); ++u) {
    for (std::uint32_t v : g.arcs[u]) hk.add_edge(u, v);
  }
  const std::uint32_t size = hk.solve();
  DistanceResult out;
  for (std::uint32_t u = 0; u < g.ones.size(); ++u) {
    const std::uint32_t v = hk.match_of_left()[u];
    if (v == BipartiteMatcher::kNone) continue;
    const Index x = g.ones[u];
    const Index y = g.zeros[v];
    out.witness.pairs.push_back({x, y, *directed_distance(shape, x, y)});
  }
  std::sort(out.witness.pairs.begin(), out.witness.pairs.end());
  out.eps = ratio(size, shape.size());
  return out;
}

DistanceResult distance_to_monotonicity(const BoolFunc& f, Index capacity) {
  return distance_to_monotonicity(f.shape(), table_of(f, capacity), capacity);
}

MonotoneCatalog::MonotoneCatalog(const GridShape& shape) : shape_(shape) {
  const Index points = shape.size();
  if (points > kMaxPoints) {
    throw CapacityError("monotone catalog over " + shape.to_string() + " needs 2^" +
                        std::to_string(points) + " tables");
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> comparable;
  for (Index x = 0; x < points; ++x) {
    for (Index y = 0; y < points; ++y) {
      if (compare(shape, x, y) == Order::Less) {
        comparable.emplace_back(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
      }
    }
  }
  const std::uint64_t total = std::uint64_t{1} << points;
  for (std::uint64_t t = 0; t < total; ++t) {
    bool ok = true;
    for (auto [x, y] : comparable) {
      if (((t >> x) & 1u) && !((t >> y) & 1u)) {
        ok = false;
        break;
      }
    }
    if (ok) tables_.push_back(static_cast<std::uint32_t>(t));
  }
}

Rational MonotoneCatalog::distance(std::uint32_t table) const {
  int best = 64;
  for (std::uint32_t g : tables_) best = std::min(best, std::popcount(table ^ g));
  return ratio(static_cast<std::uint64_t>(best), shape_.size());
}

std::uint32_t table_mask(const BitTable& table) {
  if (table.size() > 32) throw DomainError("table_mask needs at most 32 points");
  return table.size() == 0 ? 0 : static_cast<std::uint32_t>(table.words()[0]);
}

Rational brute_force_distance(const BoolFunc& f) {
  MonotoneCatalog catalog(f.shape());
  return catalog.distance(table_mask(table_of(f, MonotoneCatalog::kMaxPoints)));
}

GammaResult gamma_minus(const GridShape& shape, const BitTable& table) {
  const ViolatedEdges edges = violated_aug_edges(shape, table);
  // Left side: lower endpoints (value 1); right side: upper endpoints (value 0).
  std::vector<Index> left;
  std::vector<Index> right;
  for (const auto& e : edges.minus) {
    left.push_back(e.lower);
    right.push_back(e.upper);
  }
  std::sort(left.begin(), left.end());
  left.erase(std::unique(left.begin(), left.end()), left.end());
  std::sort(right.begin(), right.end());
  right.erase(std::unique(right.begin(), right.end()), right.end());
  auto pos = [](const std::vector<Index>& v, Index k) {
    return static_cast<std::uint32_t>(std::lower_bound(v.begin(), v.end(), k) - v.begin());
  };
  BipartiteMatcher hk(static_cast<std::uint32_t>(left.size()),
                      static_cast<std::uint32_t>(right.size()));
  for (const auto& e : edges.minus) hk.add_edge(pos(left, e.lower), pos(right, e.upper));
  const std::uint32_t size = hk.solve();
  GammaResult out;
  for (std::uint32_t u = 0; u < left.size(); ++u) {
    const std::uint32_t v = hk.match_of_left()[u];
    if (v != BipartiteMatcher::kNone) out.witness.push_back({left[u], right[v]});
  }
  out.gamma = ratio(size, shape.size());
  return out;
}

GammaResult gamma_minus(const BoolFunc& f) {
  return gamma_minus(f.shape(), table_of(f, kDefaultTableCapacity));
}

OptimalMatching optimal_matching_by(const GridShape& shape, const BitTable& table,
                                    const PairWeight& secondary, Index capacity) {
  const ViolationGraph g = violation_graph(shape, table, capacity);
  const auto L = static_cast<std::uint32_t>(g.ones.size());
  const auto R = static_cast<std::uint32_t>(g.zeros.size());
  struct ArcRef {
    std::uint32_t u;
    std::uint32_t v;
    std::uint32_t dist;
    std::int64_t weight;
    std::uint32_t arc = 0;
  };
  std::vector<ArcRef> refs;
  std::int64_t max_w = 0;
  for (std::uint32_t u = 0; u < L; ++u) {
    for (std::uint32_t v : g.arcs[u]) {
      const std::uint32_t d = *directed_distance(shape, g.ones[u], g.zeros[v]);
      const std::int64_t w = secondary(g.ones[u], g.zeros[v], d);
      if (w < 0) throw DomainError("secondary matching weight must be nonnegative");
      max_w = std::max(max_w, w);
      refs.push_back({u, v, d, w});
    }
  }
  // Any matching has at most |V| pairs, so the secondary sum stays below K
  // and one unit of distance outweighs every secondary difference.
  const std::int64_t K = 1 + static_cast<std::int64_t>(shape.size()) * max_w;

  const std::uint32_t source = L + R;
  const std::uint32_t sink = source + 1;
  MinCostFlow mcf(sink + 1);
  for (std::uint32_t u = 0; u < L; ++u) mcf.add_arc(source, u, 1, 0);
  for (std::uint32_t v = 0; v < R; ++v) mcf.add_arc(L + v, sink, 1, 0);
  for (auto& ref : refs) {
    ref.arc = mcf.add_arc(ref.u, L + ref.v, 1, std::int64_t{ref.dist} * K - ref.weight);
  }
  mcf.solve(source, sink, std::numeric_limits<std::int64_t>::max());

  OptimalMatching out;
  for (const auto& ref : refs) {
    if (mcf.flow_on(ref.arc) > 0) {
      out.mstar.pairs.push_back({g.ones[ref.u], g.zeros[ref.v], ref.dist});
    }
  }
  std::sort(out.mstar.pairs.begin(), out.mstar.pairs.end());
  out.psi = out.mstar.psi();
  out.r = out.mstar.empty() ? Rational(0) : ratio(out.mstar.total_distance(), out.mstar.size());
  return out;
}

OptimalMatching optimal_matching(const GridShape& shape, const BitTable& table, Index capacity) {
  return optimal_matching_by(
      shape, table,
      [](Index, Index, std::uint32_t d) { return std::int64_t{d} * std::int64_t{d}; }, capacity);
}

OptimalMatching optimal_matching(const BoolFunc& f, Index capacity) {
  return optimal_matching(f.shape(), table_of(f, capacity), capacity);
}

InfluenceReport isoperimetry_report(const GridShape& shape, const BitTable& table,
                                    Index capacity) {
  InfluenceReport rep;
  rep.points = shape.size();
  const ViolatedEdges edges = violated_aug_edges(shape, table);
  rep.s_minus = edges.minus.size();
  rep.s_plus = edges.plus.size();
  const GammaResult gamma = gamma_minus(shape, table);
  rep.gamma_count = gamma.witness.size();
  const OptimalMatching opt = optimal_matching(shape, table, capacity);
  rep.matching_size = opt.mstar.size();
  rep.total_distance = opt.mstar.total_distance();

  rep.I_minus = ratio(rep.s_minus, rep.points);
  rep.I_plus = ratio(rep.s_plus, rep.points);
  rep.I = rep.I_minus + rep.I_plus;
  rep.gamma_minus = ratio(rep.gamma_count, rep.points);
  rep.eps = ratio(rep.matching_size, rep.points);
  rep.r = opt.r;

  if (rep.matching_size > 0) {
    const std::uint64_t a = rep.s_minus;
    const std::uint64_t b = rep.gamma_count;
    const std::uint64_t m = rep.matching_size;
    const std::uint64_t D = rep.total_distance;
    rep.margulis = ratio(a * b, m * m);
    rep.edge_ratio = ratio(a, D);
    rep.vertex_ratio = ratio(b * D, m * m);
  }
  return rep;
}

InfluenceReport isoperimetry_report(const BoolFunc& f, Index capacity) {
  return isoperimetry_report(f.shape(), table_of(f, capacity), capacity);
}

InfluenceBound influence_bound_check(const GridShape& shape, const BitTable& table) {
  shape.require_pow2("the influence bound");
  if (shape.n() < 4) throw DomainError("the influence bound needs n >= 4");
  const ViolatedEdges edges = violated_aug_edges(shape, table);
  __extension__ using u128 = unsigned __int128;
  const u128 N = shape.size();
  const u128 a = edges.minus.size();
  const u128 total = edges.minus.size() + edges.plus.size();
  const u128 d = shape.d();
  const u128 log_n = shape.log_n();
  InfluenceBound out;
  out.I_minus = ratio(edges.minus.size(), shape.size());
  out.I = ratio(edges.minus.size() + edges.plus.size(), shape.size());
  // a/N < sqrt(d)  <=>  a^2 < d N^2
  out.applicable = a * a < d * N * N;
  // total/N < 7 sqrt(d) log n  <=>  total^2 < 49 d log^2 n N^2
  out.holds = total * total < 49 * d * log_n * log_n * N * N;
  return out;
}

InfluenceBound influence_bound_check(const BoolFunc& f) {
  return influence_bound_check(f.shape(), table_of(f, kDefaultTableCapacity));
}

}  // namespace hypermono
