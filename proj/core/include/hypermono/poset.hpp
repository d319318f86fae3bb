#pragma once

// Graded posets with a directed distance: the augmented hypergrid and
// explicit DAGs loaded from a small text format.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypermono/grid.hpp"

namespace hypermono {

class Poset {
 public:
  virtual ~Poset() = default;

  virtual Index size() const = 0;
  /// Length of a shortest directed path u -> v; nullopt when v is not above u.
  virtual std::optional<std::uint32_t> dist(Index u, Index v) const = 0;
  /// Appends the heads of all arcs leaving u.
  virtual void up_neighbors(Index u, std::vector<Index>& out) const = 0;
  virtual std::string label(Index u) const { return std::to_string(u); }
};

/// The directed augmented hypergrid; vertices are linear indices.
class GridPoset final : public Poset {
 public:
  explicit GridPoset(GridShape shape) : shape_(std::move(shape)) {}

  const GridShape& shape() const { return shape_; }

  Index size() const override { return shape_.size(); }
  std::optional<std::uint32_t> dist(Index u, Index v) const override {
    return directed_distance(shape_, u, v);
  }
  void up_neighbors(Index u, std::vector<Index>& out) const override;
  std::string label(Index u) const override { return to_string(point_of(shape_, u)); }

 private:
  GridShape shape_;
};

/// An explicit DAG with unit-length arcs and all-pairs BFS distances.
class DagPoset final : public Poset {
 public:
  static constexpr Index kMaxVertices = 2048;

  /// Throws FormatError on out-of-range ids, self loops, or cycles.
  DagPoset(std::uint32_t vertices, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& arcs);

  Index size() const override { return n_; }
  std::optional<std::uint32_t> dist(Index u, Index v) const override;
  void up_neighbors(Index u, std::vector<Index>& out) const override;

 private:
  static constexpr std::uint32_t kUnreachable = 0xffffffffu;

  std::uint32_t n_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::uint32_t> dist_;
};

/// Reads "poset <N>" followed by one "u v" arc per line. Blank lines and
/// lines starting with '#' are ignored.
DagPoset parse_dag(std::istream& in);
DagPoset load_dag_file(const std::string& path);

}  // namespace hypermono
