#include "hypermono/reduce.hpp"

#include <limits>

#include "hypermono/error.hpp"

namespace hypermono {

ReductionPlan plan(std::uint32_t n, std::uint32_t d) {
  if (n == 0 || d == 0) throw DomainError("plan needs n >= 1 and d >= 1");
  for (std::uint32_t i = 0; i < d; ++i) {
    const std::uint64_t lo = std::uint64_t{n} * (d + i);
    const std::uint64_t hi = std::uint64_t{n} * (d + i + 1);
    std::uint64_t N = 1;
    while (N < lo) N <<= 1;
    if (N > hi) continue;
    if (N > std::numeric_limits<std::uint32_t>::max()) {
      throw DomainError("reduction target side length overflows");
    }
    ReductionPlan p;
    p.n = n;
    p.d = d;
    p.i = i;
    p.N = static_cast<std::uint32_t>(N);
    p.m = static_cast<std::uint32_t>(hi - N);
    p.block_sizes.assign(p.m, d + i);
    p.block_sizes.resize(n, d + i + 1);
    return p;
  }
  // The intervals for i = 0..d-1 cover [nd, 2nd], which always holds a power of two.
  throw IntegrityError("no power of two found for n=" + std::to_string(n) +
                       ", d=" + std::to_string(d));
}

Coord phi(const ReductionPlan& p, Coord y) {
  if (y >= p.N) throw DomainError("phi argument " + std::to_string(y) + " out of range");
  const std::uint64_t short_span = std::uint64_t{p.m} * (p.d + p.i);
  if (y < short_span) return static_cast<Coord>(y / (p.d + p.i));
  return static_cast<Coord>(p.m + (y - short_span) / (p.d + p.i + 1));
}

BoolFunc lift(const ReductionPlan& p, const BoolFunc& f) {
  if (f.shape().n() != p.n || f.shape().d() != p.d) {
    throw DomainError("plan for n=" + std::to_string(p.n) + ", d=" + std::to_string(p.d) +
                      " does not match " + f.shape().to_string());
  }
  std::vector<Coord> table(p.N);
  for (Coord y = 0; y < p.N; ++y) table[y] = phi(p, y);
  const BoolFunc* source = &f;
  return BoolFunc(GridShape(p.N, p.d), [source, table = std::move(table)](std::span<const Coord> y) {
    Point x;
    x.coords.reserve(y.size());
    for (Coord c : y) x.coords.push_back(table[c]);
    return source->eval(x);
  });
}

}  // namespace hypermono
