#include "hypermono/crossing.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hypermono/error.hpp"

namespace hypermono {

PairClass classify_pair(const GridShape& shape, Index x, Index y, const MatchingId& h) {
  validate(shape, h);
  const Coord xi = coord_of(shape, x, h.dim);
  const Coord yi = coord_of(shape, y, h.dim);
  if (yi < xi) throw DomainError("classify_pair expects x <= y");
  const Coord delta = yi - xi;
  if (((delta >> h.exp) & 1u) && ((xi >> h.exp) & 1u) == h.parity) return PairClass::Cross;
  return eligible_side(xi, h.exp, h.parity) == eligible_side(yi, h.exp, h.parity)
             ? PairClass::Straight
             : PairClass::Skew;
}

PairClassification classify_pairs(const GridShape& shape, const PairMatching& m,
                                  const MatchingId& h) {
  PairClassification out;
  for (const auto& p : m.pairs) {
    switch (classify_pair(shape, p.x, p.y, h)) {
      case PairClass::Cross: out.cross.push_back(p); break;
      case PairClass::Straight: out.straight.push_back(p); break;
      case PairClass::Skew: out.skew.push_back(p); break;
    }
  }
  return out;
}

std::uint64_t crossing_total(const GridShape& shape, const PairMatching& m) {
  std::uint64_t total = 0;
  for (const MatchingId& h : all_matchings(shape)) total += classify_pairs(shape, m, h).cross.size();
  return total;
}

Rational mu(const GridShape& shape, Index x, Index y, const MatchingId& h) {
  validate(shape, h);
  const Coord xi = coord_of(shape, x, h.dim);
  const Coord yi = coord_of(shape, y, h.dim);
  if (eligible_side(xi, h.exp, h.parity) != eligible_side(yi, h.exp, h.parity)) return Rational(0);
  return Rational(1, std::int64_t{1} << h.exp);
}

Rational potential_phi(const GridShape& shape, const PairMatching& m) {
  Rational total(0);
  const auto ids = all_matchings(shape);
  for (const auto& p : m.pairs) {
    for (const MatchingId& h : ids) total += mu(shape, p.x, p.y, h);
  }
  return total;
}

std::int64_t scaled_phi_weight(const GridShape& shape, Index x, Index y) {
  const std::uint32_t log_n = shape.log_n();
  if (log_n == 0) return 0;
  std::int64_t w = 0;
  for (const MatchingId& h : all_matchings(shape)) {
    const Coord xi = coord_of(shape, x, h.dim);
    const Coord yi = coord_of(shape, y, h.dim);
    if (eligible_side(xi, h.exp, h.parity) == eligible_side(yi, h.exp, h.parity)) {
      w += std::int64_t{1} << (log_n - 1 - h.exp);
    }
  }
  return w;
}

namespace {

struct MatchIndex {
  std::map<Index, MatchedPair> by_point;

  explicit MatchIndex(const PairMatching& m) {
    for (const auto& p : m.pairs) {
      by_point.emplace(p.x, p);
      by_point.emplace(p.y, p);
    }
  }
  const MatchedPair* find(Index v) const {
    auto it = by_point.find(v);
    return it == by_point.end() ? nullptr : &it->second;
  }
};

AlternatingWalk walk(const GridShape& shape, const BitTable& table, Index x, const MatchingId& h,
                     const MatchIndex& mi) {
  const Index stride = shape.stride(h.dim);
  const Index step = Index{h.step()} * stride;
  AlternatingWalk out;
  out.points.push_back(x);
  std::set<Index> seen{x};

  auto check_pattern = [&](std::size_t j, Index s) {
    const Coord v = coord_of(shape, s, h.dim);
    Side side = coord_side(shape.n(), v, h.exp, h.parity);
    // A point reached through M may lack an H partner; the next step reports
    // that as HUnmatched, so judge its side by residue here.
    if (side == Side::Unmatched) side = eligible_side(v, h.exp, h.parity);
    const bool value = table.get(s);
    const bool ok = (j % 4 == 0 && value && side == Side::Lower) ||
                    (j % 4 == 1 && value && side == Side::Upper) ||
                    (j % 4 == 2 && !value && side == Side::Upper) ||
                    (j % 4 == 3 && !value && side == Side::Lower);
    if (!ok) {
      throw IntegrityError("alternating walk breaks the period-4 pattern at position " +
                           std::to_string(j));
    }
  };

  check_pattern(0, x);
  for (std::size_t j = 0;; ++j) {
    const Index cur = out.points.back();
    Index next = 0;
    if (j % 2 == 0) {
      const Side side = coord_side(shape.n(), coord_of(shape, cur, h.dim), h.exp, h.parity);
      if (side == Side::Unmatched) {
        out.end = WalkEnd::HUnmatched;
        return out;
      }
      next = side == Side::Lower ? cur + step : cur - step;
      const Index lo = std::min(cur, next);
      const Index hi = std::max(cur, next);
      out.points.push_back(next);
      if (!seen.insert(next).second) throw IntegrityError("alternating walk revisits a point");
      if (table.get(lo) && !table.get(hi)) {
        out.end = WalkEnd::HViolation;
        out.violation = {lo, hi};
        return out;
      }
    } else {
      const MatchedPair* p = mi.find(cur);
      if (p == nullptr || classify_pair(shape, p->x, p->y, h) != PairClass::Straight) {
        out.end = WalkEnd::StraightUnmatched;
        return out;
      }
      next = p->x == cur ? p->y : p->x;
      out.points.push_back(next);
      if (!seen.insert(next).second) throw IntegrityError("alternating walk revisits a point");
    }
    check_pattern(j + 1, next);
  }
}

/// Maximum independent set size of a small graph given as adjacency bitsets.
std::size_t max_independent(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t k = adj.size();
  std::vector<char> removed(k, 0);
  std::size_t best = 0;
  auto rec = [&](auto&& self, std::size_t count) -> void {
    std::size_t pick = k;
    std::size_t remaining = 0;
    for (std::size_t v = 0; v < k; ++v) {
      if (removed[v]) continue;
      ++remaining;
      if (pick == k) pick = v;
    }
    if (count + remaining <= best) return;
    if (pick == k) {
      best = std::max(best, count);
      return;
    }
    // Take pick: remove it and its neighbours.
    std::vector<std::size_t> undo{pick};
    removed[pick] = 1;
    for (std::size_t w : adj[pick]) {
      if (!removed[w]) {
        removed[w] = 1;
        undo.push_back(w);
      }
    }
    self(self, count + 1);
    for (std::size_t w : undo) removed[w] = 0;
    // Skip pick (only useful when it has live neighbours).
    bool has_live = false;
    for (std::size_t w : adj[pick]) has_live = has_live || !removed[w];
    if (has_live) {
      removed[pick] = 1;
      self(self, count);
      removed[pick] = 0;
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace

AlternatingWalk alternating_sequence(const GridShape& shape, const BitTable& table, Index x,
                                     const MatchingId& h, const PairMatching& m) {
  const MatchIndex mi(m);
  const MatchedPair* p = mi.find(x);
  if (p == nullptr || p->x != x || classify_pair(shape, p->x, p->y, h) != PairClass::Cross) {
    throw DomainError("alternating_sequence must start at the lower end of a crossing pair");
  }
  return walk(shape, table, x, h, mi);
}

std::vector<ViolationCount> violation_counts(const GridShape& shape, const BitTable& table,
                                             const PairMatching& m) {
  const MatchIndex mi(m);
  std::vector<ViolationCount> out;
  for (const MatchingId& h : all_matchings(shape)) {
    ViolationCount vc;
    vc.id = h;
    const auto cls = classify_pairs(shape, m, h);
    vc.cross = cls.cross.size();
    std::vector<std::vector<Index>> walks;
    std::set<std::pair<Index, Index>> violations;
    for (const auto& p : cls.cross) {
      AlternatingWalk w = walk(shape, table, p.x, h, mi);
      if (w.end != WalkEnd::HViolation) {
        ++vc.other_ends;
        continue;
      }
      violations.emplace(w.violation.lower, w.violation.upper);
      std::sort(w.points.begin(), w.points.end());
      walks.push_back(std::move(w.points));
    }
    vc.distinct_violations = violations.size();
    std::vector<std::vector<std::size_t>> adj(walks.size());
    for (std::size_t a = 0; a < walks.size(); ++a) {
      for (std::size_t b = a + 1; b < walks.size(); ++b) {
        std::vector<Index> common;
        std::set_intersection(walks[a].begin(), walks[a].end(), walks[b].begin(), walks[b].end(),
                              std::back_inserter(common));
        if (!common.empty()) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
      }
    }
    vc.disjoint_sequences = max_independent(adj);
    out.push_back(vc);
  }
  return out;
}

}  // namespace hypermono
