#include "hypermono/structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hypermono/error.hpp"
#include "hypermono/flow.hpp"

namespace hypermono {

ConsistentPair::ConsistentPair(const Poset& poset, std::vector<std::pair<Index, Index>> pairs,
                               std::uint32_t ell)
    : ell_(ell), pairs_(std::move(pairs)) {
  if (ell_ == 0) throw DomainError("consistent pair needs ell > 0");
  if (pairs_.empty()) throw DomainError("consistent pair needs at least one pair");
  std::sort(pairs_.begin(), pairs_.end());
  std::vector<Index> ends;
  for (auto [s, t] : pairs_) {
    if (s >= poset.size() || t >= poset.size()) throw DomainError("pair endpoint out of range");
    if (poset.dist(s, t) != ell_) {
      throw DomainError("pair (" + poset.label(s) + ", " + poset.label(t) +
                        ") is not at distance " + std::to_string(ell_));
    }
    ends.push_back(s);
    ends.push_back(t);
  }
  std::sort(ends.begin(), ends.end());
  if (std::adjacent_find(ends.begin(), ends.end()) != ends.end()) {
    throw DomainError("consistent pair endpoints must be distinct");
  }
}

std::vector<Index> ConsistentPair::S() const {
  std::vector<Index> out;
  for (auto [s, t] : pairs_) out.push_back(s);
  return out;
}

std::vector<Index> ConsistentPair::T() const {
  std::vector<Index> out;
  for (auto [s, t] : pairs_) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Index> CoverGraph::vertices() const {
  std::vector<Index> out;
  for (const auto& level : levels) out.insert(out.end(), level.begin(), level.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint32_t> CoverGraph::levels_of(Index v) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t j = 0; j < levels.size(); ++j) {
    if (std::binary_search(levels[j].begin(), levels[j].end(), v)) out.push_back(j);
  }
  return out;
}

namespace {

/// (vertex, level) memberships and arcs of the union of shortest s->t paths
/// over every source/target combination at distance ell.
struct Layered {
  std::set<std::pair<Index, std::uint32_t>> members;
  std::set<std::pair<Index, Index>> arcs;
};

Layered explore(const Poset& poset, const std::vector<Index>& S, const std::vector<Index>& T,
                std::uint32_t ell, bool with_arcs) {
  Layered out;
  std::vector<Index> frontier;
  std::vector<Index> next;
  std::vector<Index> nbrs;
  for (Index s : S) {
    for (Index t : T) {
      if (poset.dist(s, t) != ell) continue;
      frontier.assign(1, s);
      for (std::uint32_t j = 0; j <= ell; ++j) {
        for (Index z : frontier) out.members.emplace(z, j);
        if (j == ell) break;
        next.clear();
        for (Index z : frontier) {
          nbrs.clear();
          poset.up_neighbors(z, nbrs);
          for (Index w : nbrs) {
            // dist(s, w) = j + 1 follows from dist(w, t) = ell - j - 1.
            if (poset.dist(w, t) == ell - j - 1) {
              next.push_back(w);
              if (with_arcs) out.arcs.emplace(z, w);
            }
          }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        frontier.swap(next);
      }
    }
  }
  return out;
}

std::vector<Index> sources(const std::vector<std::pair<Index, Index>>& pairs) {
  std::vector<Index> out;
  for (auto [s, t] : pairs) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Index> targets(const std::vector<std::pair<Index, Index>>& pairs) {
  std::vector<Index> out;
  for (auto [s, t] : pairs) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CoverGraph build_cover_graph(const Poset& poset, const ConsistentPair& pair) {
  const Layered lay = explore(poset, pair.S(), pair.T(), pair.ell(), true);
  CoverGraph g;
  g.ell = pair.ell();
  g.levels.resize(g.ell + 1);
  for (auto [z, j] : lay.members) g.levels[j].push_back(z);
  for (auto& level : g.levels) std::sort(level.begin(), level.end());
  g.arcs.assign(lay.arcs.begin(), lay.arcs.end());
  return g;
}

std::vector<std::vector<Index>> level_sets(const Poset& poset, const ConsistentPair& pair) {
  const Layered lay = explore(poset, pair.S(), pair.T(), pair.ell(), false);
  std::vector<std::vector<Index>> levels(pair.ell() + 1);
  for (auto [z, j] : lay.members) levels[j].push_back(z);
  for (auto& level : levels) std::sort(level.begin(), level.end());
  return levels;
}

bool is_good(const CoverGraph& g) {
  std::map<Index, std::uint32_t> level_of;
  for (std::uint32_t j = 0; j < g.levels.size(); ++j) {
    for (Index z : g.levels[j]) {
      if (!level_of.emplace(z, j).second) return false;
    }
  }
  for (auto [u, v] : g.arcs) {
    const auto a = level_of.find(u);
    const auto b = level_of.find(v);
    if (a == level_of.end() || b == level_of.end() || b->second != a->second + 1) return false;
  }
  return true;
}

bool is_good(const Poset& poset, const ConsistentPair& pair) {
  return is_good(build_cover_graph(poset, pair));
}

namespace {

bool members_conflict(const std::set<std::pair<Index, std::uint32_t>>& a,
                      const std::set<std::pair<Index, std::uint32_t>>& b, std::uint32_t ell) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  bool hit = false;
  for (const auto& m : small) {
    if (!large.contains(m)) continue;
    if (m.second == 0 || m.second == ell) {
      throw IntegrityError("conflict at level " + std::to_string(m.second) +
                           ": the pair sets share an endpoint");
    }
    hit = true;
  }
  return hit;
}

}  // namespace

bool conflicts(const Poset& poset, const std::vector<std::pair<Index, Index>>& c1,
               const std::vector<std::pair<Index, Index>>& c2, std::uint32_t ell) {
  const Layered a = explore(poset, sources(c1), targets(c1), ell, false);
  const Layered b = explore(poset, sources(c2), targets(c2), ell, false);
  return members_conflict(a.members, b.members, ell);
}

std::vector<ConsistentPair> conflict_free_decompose(
    const Poset& poset, const std::vector<std::pair<Index, Index>>& pairs, std::uint32_t ell) {
  // Validates distances and disjointness up front.
  const ConsistentPair all(poset, pairs, ell);

  std::vector<std::vector<std::pair<Index, Index>>> sets;
  for (const auto& p : all.pairs()) sets.push_back({p});

  while (true) {
    const std::size_t k = sets.size();
    std::vector<std::set<std::pair<Index, std::uint32_t>>> members(k);
    for (std::size_t i = 0; i < k; ++i) {
      members[i] = explore(poset, sources(sets[i]), targets(sets[i]), ell, false).members;
    }
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool any_edge = false;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        if (members_conflict(members[i], members[j], ell)) {
          any_edge = true;
          parent[find(i)] = find(j);
        }
      }
    }
    if (!any_edge) break;
    std::map<std::size_t, std::vector<std::pair<Index, Index>>> merged;
    for (std::size_t i = 0; i < k; ++i) {
      auto& dst = merged[find(i)];
      dst.insert(dst.end(), sets[i].begin(), sets[i].end());
    }
    sets.clear();
    for (auto& [root, group] : merged) {
      std::sort(group.begin(), group.end());
      sets.push_back(std::move(group));
    }
    std::sort(sets.begin(), sets.end());
  }

  std::vector<ConsistentPair> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.emplace_back(poset, std::move(s), ell);
  return out;
}

bool are_independent(const CoverGraph& a, const CoverGraph& b) {
  const auto va = a.vertices();
  const auto vb = b.vertices();
  std::vector<Index> common;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
  return common.empty();
}

bool are_independent(const Poset& poset, const ConsistentPair& a, const ConsistentPair& b) {
  return are_independent(build_cover_graph(poset, a), build_cover_graph(poset, b));
}

std::vector<std::vector<Index>> route_disjoint_paths(const Poset& poset, const ConsistentPair& pair) {
  const CoverGraph g = build_cover_graph(poset, pair);
  if (!is_good(g)) throw NotGoodError("the pair is not " + std::to_string(pair.ell()) + "-good");

  const std::vector<Index> verts = g.vertices();
  auto id = [&](Index v) {
    return static_cast<std::uint32_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  const auto V = static_cast<std::uint32_t>(verts.size());
  // Node 2k is the entry of vertex k, 2k+1 its exit.
  const std::uint32_t source = 2 * V;
  const std::uint32_t sink = source + 1;
  MaxFlow flow(sink + 1);
  for (std::uint32_t k = 0; k < V; ++k) flow.add_arc(2 * k, 2 * k + 1, 1);
  for (auto [u, v] : g.arcs) flow.add_arc(2 * id(u) + 1, 2 * id(v), 1);
  for (Index s : pair.S()) flow.add_arc(source, 2 * id(s), 1);
  for (Index t : pair.T()) flow.add_arc(2 * id(t) + 1, sink, 1);

  const std::int64_t value = flow.solve(source, sink);
  if (value != static_cast<std::int64_t>(pair.size())) {
    throw IntegrityError("routing found " + std::to_string(value) + " disjoint paths for a good pair of size " +
                         std::to_string(pair.size()));
  }

  std::vector<std::vector<Index>> paths;
  for (Index s : pair.S()) {
    std::vector<Index> path{s};
    std::uint32_t node = 2 * id(s) + 1;
    while (true) {
      std::uint32_t next = sink + 1;
      for (std::uint32_t a : flow.out_arcs(node)) {
        if (MaxFlow::is_forward(a) && flow.flow_on(a) > 0) {
          next = flow.head(a);
          break;
        }
      }
      if (next == sink) break;
      if (next > sink) throw IntegrityError("flow decomposition lost a path");
      path.push_back(verts[next / 2]);
      node = next + 1;
    }
    if (path.size() != pair.ell() + 1) {
      throw IntegrityError("routed path has length " + std::to_string(path.size() - 1) +
                           ", expected " + std::to_string(pair.ell()));
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

bool degree_monotonicity_check(const CoverGraph& g) {
  const std::vector<Index> verts = g.vertices();
  auto id = [&](Index v) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  std::vector<std::vector<std::size_t>> out(verts.size());
  std::vector<std::size_t> indeg(verts.size(), 0);
  for (auto [u, v] : g.arcs) {
    out[id(u)].push_back(id(v));
    ++indeg[id(v)];
  }
  std::vector<char> seen;
  std::vector<std::size_t> stack;
  for (std::size_t u = 0; u < verts.size(); ++u) {
    seen.assign(verts.size(), 0);
    stack.assign(out[u].begin(), out[u].end());
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      if (seen[v]) continue;
      seen[v] = 1;
      if (out[u].size() < out[v].size() || indeg[u] > indeg[v]) return false;
      stack.insert(stack.end(), out[v].begin(), out[v].end());
    }
  }
  return true;
}

bool layer_size_dichotomy(const CoverGraph& g, std::size_t m) {
  if (g.ell == 0) return true;
  return g.levels[1].size() >= m || g.levels[g.ell - 1].size() >= m;
}

}  // namespace hypermono
