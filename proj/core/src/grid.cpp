#include "hypermono/grid.hpp"

#include <bit>
#include <sstream>

#include "hypermono/error.hpp"

namespace hypermono {

GridShape::GridShape(std::uint32_t n, std::uint32_t d) : n_(n), d_(d), size_(1) {
  if (n == 0 || d == 0) {
    throw DomainError("grid shape requires n >= 1 and d >= 1");
  }
  strides_.reserve(d);
  for (std::uint32_t i = 0; i < d; ++i) {
    strides_.push_back(size_);
    if (size_ > kMaxPoints / n) {
      throw DomainError("grid " + std::to_string(n) + "^" + std::to_string(d) +
                        " exceeds the supported point count");
    }
    size_ *= n;
  }
}

std::uint32_t GridShape::log_n() const {
  require_pow2("log n");
  return ilog2(n_);
}

void GridShape::require_pow2(const char* what) const {
  if (!is_pow2(n_)) {
    throw DomainError(std::string(what) + " requires n to be a power of 2 (n = " +
                      std::to_string(n_) + ")");
  }
}

std::string GridShape::to_string() const {
  return "[" + std::to_string(n_) + "]^" + std::to_string(d_);
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i) os << ',';
    os << p.coords[i];
  }
  os << ')';
  return os.str();
}

std::string to_string(const MatchingId& m) {
  return "H^" + std::to_string(m.parity) + "_{" + std::to_string(m.dim) + "," +
         std::to_string(m.exp) + "}";
}

void validate(const GridShape& shape, const Point& p) {
  if (p.coords.size() != shape.d()) {
    throw DomainError("point " + to_string(p) + " has wrong dimension for " + shape.to_string());
  }
  for (Coord c : p.coords) {
    if (c >= shape.n()) {
      throw DomainError("point " + to_string(p) + " out of range for " + shape.to_string());
    }
  }
}

Index linear_index(const GridShape& shape, const Point& p) {
  validate(shape, p);
  Index idx = 0;
  for (std::uint32_t i = 0; i < shape.d(); ++i) idx += Index{p.coords[i]} * shape.stride(i);
  return idx;
}

Point point_of(const GridShape& shape, Index idx) {
  if (idx >= shape.size()) {
    throw DomainError("index " + std::to_string(idx) + " out of range for " + shape.to_string());
  }
  Point p;
  p.coords.resize(shape.d());
  for (std::uint32_t i = 0; i < shape.d(); ++i) {
    p.coords[i] = static_cast<Coord>(idx % shape.n());
    idx /= shape.n();
  }
  return p;
}

void validate(const GridShape& shape, const MatchingId& m) {
  shape.require_pow2("matching enumeration");
  if (m.dim >= shape.d() || m.exp >= shape.log_n() || m.parity > 1) {
    throw DomainError("invalid matching " + to_string(m) + " for " + shape.to_string());
  }
}

std::vector<MatchingId> all_matchings(const GridShape& shape) {
  std::vector<MatchingId> out;
  const std::uint32_t logn = shape.log_n();
  out.reserve(std::size_t{shape.d()} * logn * 2);
  for (std::uint32_t dim = 0; dim < shape.d(); ++dim) {
    for (std::uint32_t exp = 0; exp < logn; ++exp) {
      out.push_back({dim, exp, 0});
      out.push_back({dim, exp, 1});
    }
  }
  return out;
}

Side coord_side(std::uint32_t n, Coord v, std::uint32_t exp, std::uint32_t parity) {
  const Coord s = Coord{1} << exp;
  const bool high_half = (v & s) != 0;  // v mod 2s >= s
  if (parity == 0) return high_half ? Side::Upper : Side::Lower;
  if (high_half) return (v + s <= n - 1) ? Side::Lower : Side::Unmatched;
  return (v >= s) ? Side::Upper : Side::Unmatched;
}

MatchRole classify_in_matching(const GridShape& shape, const Point& x, const MatchingId& m) {
  validate(shape, x);
  validate(shape, m);
  MatchRole role;
  const Coord v = x.coords[m.dim];
  role.side = coord_side(shape.n(), v, m.exp, m.parity);
  if (role.side == Side::Lower) {
    role.partner = x;
    (*role.partner)[m.dim] = v + m.step();
  } else if (role.side == Side::Upper) {
    role.partner = x;
    (*role.partner)[m.dim] = v - m.step();
  }
  return role;
}

std::vector<AugEdge> enumerate_matching(const GridShape& shape, const MatchingId& m) {
  validate(shape, m);
  std::vector<AugEdge> out;
  for_each_matching_edge(shape, m, [&](Index lo, Index hi) {
    out.push_back({point_of(shape, lo), point_of(shape, hi), m});
  });
  return out;
}

std::vector<AugEdge> enumerate_augmented_edges(const GridShape& shape) {
  std::vector<AugEdge> out;
  out.reserve(augmented_edge_count(shape));
  for (const MatchingId& m : all_matchings(shape)) {
    auto edges = enumerate_matching(shape, m);
    out.insert(out.end(), edges.begin(), edges.end());
  }
  return out;
}

Index augmented_edge_count(const GridShape& shape) {
  const std::uint32_t logn = shape.log_n();
  Index per_line = 0;
  for (std::uint32_t a = 0; a < logn; ++a) per_line += shape.n() - (Index{1} << a);
  return Index{shape.d()} * (shape.size() / shape.n()) * per_line;
}

Order compare(const Point& x, const Point& y) {
  if (x.coords.size() != y.coords.size()) {
    throw DomainError("compare: points " + to_string(x) + " and " + to_string(y) +
                      " have different dimensions");
  }
  bool le = true;
  bool ge = true;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (x.coords[i] > y.coords[i]) le = false;
    if (x.coords[i] < y.coords[i]) ge = false;
  }
  if (le && ge) return Order::Equal;
  if (le) return Order::Less;
  if (ge) return Order::Greater;
  return Order::Incomparable;
}

Order compare(const GridShape& shape, Index x, Index y) {
  bool le = true;
  bool ge = true;
  for (std::uint32_t i = 0; i < shape.d(); ++i) {
    const Coord a = static_cast<Coord>(x % shape.n());
    const Coord b = static_cast<Coord>(y % shape.n());
    x /= shape.n();
    y /= shape.n();
    if (a > b) le = false;
    if (a < b) ge = false;
  }
  if (le && ge) return Order::Equal;
  if (le) return Order::Less;
  if (ge) return Order::Greater;
  return Order::Incomparable;
}

std::optional<std::uint32_t> directed_distance(const GridShape& shape, const Point& x,
                                               const Point& y) {
  validate(shape, x);
  validate(shape, y);
  std::uint32_t total = 0;
  for (std::uint32_t i = 0; i < shape.d(); ++i) {
    if (x.coords[i] > y.coords[i]) return std::nullopt;
    total += static_cast<std::uint32_t>(std::popcount(y.coords[i] - x.coords[i]));
  }
  return total;
}

std::optional<std::uint32_t> directed_distance(const GridShape& shape, Index x, Index y) {
  std::uint32_t total = 0;
  for (std::uint32_t i = 0; i < shape.d(); ++i) {
    const Coord a = static_cast<Coord>(x % shape.n());
    const Coord b = static_cast<Coord>(y % shape.n());
    x /= shape.n();
    y /= shape.n();
    if (a > b) return std::nullopt;
    total += static_cast<std::uint32_t>(std::popcount(b - a));
  }
  return total;
}

}  // namespace hypermono
