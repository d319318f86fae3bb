#pragma once

// Independent reference implementations used as test oracles. They follow
// the definitions directly and share no code with the library beyond the
// grid indexing helpers.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <queue>
#include <tuple>
#include <vector>

#include "hypermono/func.hpp"
#include "hypermono/grid.hpp"

namespace hypermono::testing {

inline BitTable table_of(std::initializer_list<int> bits) {
  BitTable t(bits.size());
  Index k = 0;
  for (int b : bits) t.set(k++, b != 0);
  return t;
}

inline BoolFunc line_function(std::initializer_list<int> bits) {
  return BoolFunc(GridShape(static_cast<std::uint32_t>(bits.size()), 1), table_of(bits));
}

inline bool is_power_of_two(std::uint64_t v) {
  for (std::uint64_t p = 1; p != 0 && p <= v; p <<= 1) {
    if (p == v) return true;
  }
  return false;
}

/// All (lower, upper) index pairs differing in one coordinate by a power of
/// two, found by comparing every pair of points.
inline std::vector<std::pair<Index, Index>> brute_augmented_pairs(const GridShape& shape) {
  std::vector<std::pair<Index, Index>> out;
  for (Index u = 0; u < shape.size(); ++u) {
    const Point pu = point_of(shape, u);
    for (Index v = 0; v < shape.size(); ++v) {
      const Point pv = point_of(shape, v);
      int differing = 0;
      bool ok = true;
      for (std::uint32_t i = 0; i < shape.d(); ++i) {
        if (pu[i] == pv[i]) continue;
        ++differing;
        ok = ok && pv[i] > pu[i] && is_power_of_two(pv[i] - pu[i]);
      }
      if (differing == 1 && ok) out.emplace_back(u, v);
    }
  }
  return out;
}

/// Shortest upward path length by breadth-first search over augmented steps.
inline std::optional<std::uint32_t> bfs_distance(const GridShape& shape, Index from, Index to) {
  const auto pairs = brute_augmented_pairs(shape);
  std::vector<std::vector<Index>> adj(shape.size());
  for (const auto& [u, v] : pairs) adj[u].push_back(v);
  std::vector<int> dist(shape.size(), -1);
  std::queue<Index> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    const Index u = q.front();
    q.pop();
    for (Index v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  if (dist[to] < 0) return std::nullopt;
  return static_cast<std::uint32_t>(dist[to]);
}

/// Walsh coefficient by direct summation: the character at a point is the
/// parity of the AND of the index masks with the coordinates.
inline std::vector<double> naive_walsh(const GridShape& shape, const std::vector<double>& f) {
  std::vector<double> out(shape.size(), 0.0);
  for (Index s = 0; s < shape.size(); ++s) {
    const Point masks = point_of(shape, s);
    double acc = 0.0;
    for (Index x = 0; x < shape.size(); ++x) {
      const Point px = point_of(shape, x);
      unsigned parity = 0;
      for (std::uint32_t i = 0; i < shape.d(); ++i) parity ^= __builtin_popcount(masks[i] & px[i]);
      acc += (parity & 1u) ? -f[x] : f[x];
    }
    out[s] = acc / static_cast<double>(shape.size());
  }
  return out;
}

}  // namespace hypermono::testing
