#include "hypermono/flow.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <queue>

#include "hypermono/error.hpp"

namespace hypermono {

namespace {
constexpr std::uint32_t kInf32 = std::numeric_limits<std::uint32_t>::max();
constexpr std::int64_t kInf64 = std::numeric_limits<std::int64_t>::max() / 4;
}  // namespace

BipartiteMatcher::BipartiteMatcher(std::uint32_t left, std::uint32_t right)
    : left_(left), right_(right), adj_(left) {}

void BipartiteMatcher::add_edge(std::uint32_t u, std::uint32_t v) {
  if (u >= left_ || v >= right_) throw DomainError("bipartite edge out of range");
  adj_[u].push_back(v);
}

bool BipartiteMatcher::bfs() {
  std::deque<std::uint32_t> queue;
  bool found = false;
  for (std::uint32_t u = 0; u < left_; ++u) {
    if (match_l_[u] == kNone) {
      dist_[u] = 0;
      queue.push_back(u);
    } else {
      dist_[u] = kInf32;
    }
  }
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (std::uint32_t v : adj_[u]) {
      const std::uint32_t w = match_r_[v];
      if (w == kNone) {
        found = true;
      } else if (dist_[w] == kInf32) {
        dist_[w] = dist_[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return found;
}

bool BipartiteMatcher::dfs(std::uint32_t u) {
  for (std::uint32_t v : adj_[u]) {
    const std::uint32_t w = match_r_[v];
    if (w == kNone || (dist_[w] == dist_[u] + 1 && dfs(w))) {
      match_l_[u] = v;
      match_r_[v] = u;
      return true;
    }
  }
  dist_[u] = kInf32;
  return false;
}

std::uint32_t BipartiteMatcher::solve() {
  match_l_.assign(left_, kNone);
  match_r_.assign(right_, kNone);
  dist_.assign(left_, kInf32);
  std::uint32_t size = 0;
  while (bfs()) {
    for (std::uint32_t u = 0; u < left_; ++u) {
      if (match_l_[u] == kNone && dfs(u)) ++size;
    }
  }
  return size;
}

MinCostFlow::MinCostFlow(std::uint32_t nodes) : out_(nodes) {}

std::uint32_t MinCostFlow::add_arc(std::uint32_t from, std::uint32_t to, std::int64_t cap,
                                   std::int64_t cost) {
  const auto id = static_cast<std::uint32_t>(arcs_.size());
  arcs_.push_back({to, cap, cost});
  arcs_.push_back({from, 0, -cost});
  out_[from].push_back(id);
  out_[to].push_back(id + 1);
  original_cap_.push_back(cap);
  original_cap_.push_back(0);
  return id;
}

std::int64_t MinCostFlow::flow_on(std::uint32_t arc) const {
  return original_cap_[arc] - arcs_[arc].cap;
}

std::pair<std::int64_t, std::int64_t> MinCostFlow::solve(std::uint32_t s, std::uint32_t t,
                                                         std::int64_t limit) {
  const std::size_t n = out_.size();
  std::vector<std::int64_t> potential(n, 0);

  // Bellman-Ford for initial potentials (negative arc costs allowed).
  {
    std::vector<std::int64_t> dist(n, kInf64);
    dist[s] = 0;
    for (std::size_t round = 0; round + 1 < n; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (dist[u] == kInf64) continue;
        for (std::uint32_t a : out_[u]) {
          if (arcs_[a].cap > 0 && dist[u] + arcs_[a].cost < dist[arcs_[a].to]) {
            dist[arcs_[a].to] = dist[u] + arcs_[a].cost;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    for (std::size_t u = 0; u < n; ++u) potential[u] = dist[u] == kInf64 ? 0 : dist[u];
  }

  std::int64_t flow = 0;
  std::int64_t cost = 0;
  std::vector<std::int64_t> dist(n);
  std::vector<std::uint32_t> via(n);
  using Item = std::pair<std::int64_t, std::uint32_t>;
  while (flow < limit) {
    std::fill(dist.begin(), dist.end(), kInf64);
    std::fill(via.begin(), via.end(), kInf32);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0;
    heap.push({0, s});
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du != dist[u]) continue;
      for (std::uint32_t a : out_[u]) {
        const Arc& arc = arcs_[a];
        if (arc.cap <= 0) continue;
        const std::int64_t nd = du + arc.cost + potential[u] - potential[arc.to];
        if (nd < dist[arc.to]) {
          dist[arc.to] = nd;
          via[arc.to] = a;
          heap.push({nd, arc.to});
        }
      }
    }
    if (dist[t] == kInf64) break;
    for (std::size_t u = 0; u < n; ++u) {
      if (dist[u] != kInf64) potential[u] += dist[u];
    }
    std::int64_t push = limit - flow;
    for (std::uint32_t v = t; v != s; v = arcs_[via[v] ^ 1u].to) {
      push = std::min(push, arcs_[via[v]].cap);
    }
    for (std::uint32_t v = t; v != s; v = arcs_[via[v] ^ 1u].to) {
      arcs_[via[v]].cap -= push;
      arcs_[via[v] ^ 1u].cap += push;
      cost += push * arcs_[via[v]].cost;
    }
    flow += push;
  }
  return {flow, cost};
}

MaxFlow::MaxFlow(std::uint32_t nodes) : out_(nodes) {}

std::uint32_t MaxFlow::add_arc(std::uint32_t from, std::uint32_t to, std::int64_t cap) {
  const auto id = static_cast<std::uint32_t>(arcs_.size());
  arcs_.push_back({to, cap});
  arcs_.push_back({from, 0});
  out_[from].push_back(id);
  out_[to].push_back(id + 1);
  original_cap_.push_back(cap);
  original_cap_.push_back(0);
  return id;
}

std::int64_t MaxFlow::flow_on(std::uint32_t arc) const { return original_cap_[arc] - arcs_[arc].cap; }

bool MaxFlow::bfs(std::uint32_t s, std::uint32_t t) {
  level_.assign(out_.size(), -1);
  std::deque<std::uint32_t> queue{s};
  level_[s] = 0;
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (std::uint32_t a : out_[u]) {
      if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
        level_[arcs_[a].to] = level_[u] + 1;
        queue.push_back(arcs_[a].to);
      }
    }
  }
  return level_[t] >= 0;
}

std::int64_t MaxFlow::dfs(std::uint32_t u, std::uint32_t t, std::int64_t pushed) {
  if (u == t) return pushed;
  for (std::size_t& i = next_[u]; i < out_[u].size(); ++i) {
    const std::uint32_t a = out_[u][i];
    Arc& arc = arcs_[a];
    if (arc.cap <= 0 || level_[arc.to] != level_[u] + 1) continue;
    const std::int64_t got = dfs(arc.to, t, std::min(pushed, arc.cap));
    if (got > 0) {
      arc.cap -= got;
      arcs_[a ^ 1u].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::solve(std::uint32_t s, std::uint32_t t) {
  std::int64_t total = 0;
  while (bfs(s, t)) {
    next_.assign(out_.size(), 0);
    while (std::int64_t pushed = dfs(s, t, kInf64)) total += pushed;
  }
  return total;
}

}  // namespace hypermono
