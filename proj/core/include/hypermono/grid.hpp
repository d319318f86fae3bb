#pragma once

// The hypergrid [n]^d with 0-indexed coordinates, its augmented edge set, and
// the partition of that edge set into matchings H^c_{i,a}.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hypermono {

using Coord = std::uint32_t;
using Index = std::uint64_t;

inline constexpr bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

/// floor(log2 v) for v >= 1.
inline constexpr std::uint32_t ilog2(std::uint64_t v) {
  std::uint32_t r = 0;
  while (v >>= 1) ++r;
  return r;
}

class GridShape {
 public:
  /// Largest supported point count; keeps every linear index and every
  /// normalized count representable.
  static constexpr Index kMaxPoints = Index{1} << 40;

  GridShape(std::uint32_t n, std::uint32_t d);

  std::uint32_t n() const { return n_; }
  std::uint32_t d() const { return d_; }
  Index size() const { return size_; }
  Index stride(std::uint32_t dim) const { return strides_[dim]; }

  bool n_is_pow2() const { return is_pow2(n_); }
  /// log2 n; throws DomainError unless n is a power of two.
  std::uint32_t log_n() const;
  /// Throws DomainError naming `what` unless n is a power of two.
  void require_pow2(const char* what) const;

  bool operator==(const GridShape& o) const { return n_ == o.n_ && d_ == o.d_; }

  std::string to_string() const;

 private:
  std::uint32_t n_;
  std::uint32_t d_;
  Index size_;
  std::vector<Index> strides_;
};

struct Point {
  std::vector<Coord> coords;

  Point() = default;
  explicit Point(std::vector<Coord> c) : coords(std::move(c)) {}
  Point(std::initializer_list<Coord> c) : coords(c) {}

  std::size_t dim() const { return coords.size(); }
  Coord operator[](std::size_t i) const { return coords[i]; }
  Coord& operator[](std::size_t i) { return coords[i]; }

  auto operator<=>(const Point&) const = default;
};

std::string to_string(const Point& p);

/// Throws DomainError unless p has d coordinates, each in [0, n).
void validate(const GridShape& shape, const Point& p);

/// Row-major, dimension 0 fastest: sum_i x_i * n^i.
Index linear_index(const GridShape& shape, const Point& p);
Point point_of(const GridShape& shape, Index idx);
/// Coordinate `dim` of the point with linear index idx.
inline Coord coord_of(const GridShape& shape, Index idx, std::uint32_t dim) {
  return static_cast<Coord>((idx / shape.stride(dim)) % shape.n());
}

/// Identifies H^parity_{dim,exp}: step 2^exp along dimension dim.
struct MatchingId {
  std::uint32_t dim = 0;
  std::uint32_t exp = 0;
  std::uint32_t parity = 0;

  Coord step() const { return Coord{1} << exp; }
  auto operator<=>(const MatchingId&) const = default;
};

std::string to_string(const MatchingId& m);

void validate(const GridShape& shape, const MatchingId& m);

/// Every matching id of the shape, ordered by (dim, exp, parity).
std::vector<MatchingId> all_matchings(const GridShape& shape);

enum class Side { Lower, Upper, Unmatched };

/// Role of coordinate value v in the one-dimensional matching (exp, parity)
/// on a line of length n, including the range guards of the odd matchings.
Side coord_side(std::uint32_t n, Coord v, std::uint32_t exp, std::uint32_t parity);

/// Side selected by the residue of v alone (bit `exp` of v equal to parity
/// means the lower side), ignoring whether the partner is in range. Every
/// point has an eligible side; this is what pair classification uses.
inline Side eligible_side(Coord v, std::uint32_t exp, std::uint32_t parity) {
  return ((v >> exp) & 1u) == parity ? Side::Lower : Side::Upper;
}

struct MatchRole {
  Side side = Side::Unmatched;
  std::optional<Point> partner;
};

MatchRole classify_in_matching(const GridShape& shape, const Point& x, const MatchingId& m);

struct AugEdge {
  Point lower;
  Point upper;
  MatchingId id;

  bool operator==(const AugEdge&) const = default;
};

std::vector<AugEdge> enumerate_matching(const GridShape& shape, const MatchingId& m);
std::vector<AugEdge> enumerate_augmented_edges(const GridShape& shape);

/// d * n^(d-1) * sum_a (n - 2^a); requires n a power of two.
Index augmented_edge_count(const GridShape& shape);

/// Visits every edge of H^c_{i,a} as (lower index, upper index).
template <class Fn>
void for_each_matching_edge(const GridShape& shape, const MatchingId& m, Fn&& fn) {
  const Coord step = m.step();
  const Index stride = shape.stride(m.dim);
  const std::uint32_t n = shape.n();
  for (Index idx = 0; idx < shape.size(); ++idx) {
    const Coord v = coord_of(shape, idx, m.dim);
    if (coord_side(n, v, m.exp, m.parity) == Side::Lower) {
      fn(idx, idx + Index{step} * stride);
    }
  }
}

/// Visits every pair of points that differ in exactly one coordinate by a
/// power of two, as fn(lower index, upper index, dim, exp). Valid for any n;
/// for n a power of two these are exactly the augmented edges.
template <class Fn>
void for_each_augmented_pair(const GridShape& shape, Fn&& fn) {
  const std::uint32_t n = shape.n();
  for (Index idx = 0; idx < shape.size(); ++idx) {
    for (std::uint32_t dim = 0; dim < shape.d(); ++dim) {
      const Coord v = coord_of(shape, idx, dim);
      const Index stride = shape.stride(dim);
      std::uint32_t exp = 0;
      for (Coord step = 1; v + step <= n - 1; step <<= 1, ++exp) {
        fn(idx, idx + Index{step} * stride, dim, exp);
      }
    }
  }
}

enum class Order { Less, Equal, Greater, Incomparable };

/// Coordinate-wise dominance. Throws DomainError on dimension mismatch.
Order compare(const Point& x, const Point& y);
Order compare(const GridShape& shape, Index x, Index y);

/// Fewest upward augmented steps from x to y: sum_i popcount(y_i - x_i) when
/// x <= y coordinate-wise, nullopt otherwise. Valid for any n.
std::optional<std::uint32_t> directed_distance(const GridShape& shape, const Point& x,
                                               const Point& y);
std::optional<std::uint32_t> directed_distance(const GridShape& shape, Index x, Index y);

}  // namespace hypermono
