#include "hypermono/poset.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <sstream>

#include "hypermono/error.hpp"

namespace hypermono {

void GridPoset::up_neighbors(Index u, std::vector<Index>& out) const {
  for (std::uint32_t i = 0; i < shape_.d(); ++i) {
    const Coord v = coord_of(shape_, u, i);
    for (Coord step = 1; v + step <= shape_.n() - 1; step <<= 1) {
      out.push_back(u + Index{step} * shape_.stride(i));
    }
  }
}

DagPoset::DagPoset(std::uint32_t vertices,
                   const std::vector<std::pair<std::uint32_t, std::uint32_t>>& arcs)
    : n_(vertices), out_(vertices) {
  if (vertices == 0) throw FormatError("poset needs at least one vertex");
  if (vertices > kMaxVertices) {
    throw CapacityError("poset with " + std::to_string(vertices) + " vertices exceeds " +
                        std::to_string(kMaxVertices));
  }
  for (auto [u, v] : arcs) {
    if (u >= n_ || v >= n_) {
      throw FormatError("arc " + std::to_string(u) + " " + std::to_string(v) + " out of range");
    }
    if (u == v) throw FormatError("self loop at vertex " + std::to_string(u));
    out_[u].push_back(v);
  }
  for (auto& adj : out_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  dist_.assign(std::size_t{n_} * n_, kUnreachable);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < n_; ++s) {
    std::uint32_t* row = &dist_[std::size_t{s} * n_];
    row[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const std::uint32_t u = queue.front();
      queue.pop_front();
      for (std::uint32_t v : out_[u]) {
        if (v == s) throw FormatError("poset contains a cycle through vertex " + std::to_string(s));
        if (row[v] == kUnreachable) {
          row[v] = row[u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
}

std::optional<std::uint32_t> DagPoset::dist(Index u, Index v) const {
  const std::uint32_t d = dist_[u * n_ + v];
  if (d == kUnreachable) return std::nullopt;
  return d;
}

void DagPoset::up_neighbors(Index u, std::vector<Index>& out) const {
  for (std::uint32_t v : out_[u]) out.push_back(v);
}

DagPoset parse_dag(std::istream& in) {
  std::string line;
  std::optional<std::uint32_t> vertices;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!vertices) {
      std::string keyword;
      long long count = -1;
      if (!(fields >> keyword >> count) || keyword != "poset" || count <= 0) {
        throw FormatError("line " + std::to_string(line_no) + ": expected 'poset <N>'");
      }
      vertices = static_cast<std::uint32_t>(count);
    } else {
      long long u = -1;
      long long v = -1;
      if (!(fields >> u >> v) || u < 0 || v < 0) {
        throw FormatError("line " + std::to_string(line_no) + ": expected 'u v'");
      }
      arcs.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    }
    std::string extra;
    if (fields >> extra) {
      throw FormatError("line " + std::to_string(line_no) + ": unexpected trailing '" + extra + "'");
    }
  }
  if (!vertices) throw FormatError("missing 'poset <N>' header");
  return DagPoset(*vertices, arcs);
}

DagPoset load_dag_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return parse_dag(in);
}

}  // namespace hypermono
