#pragma once

// Embedding of [n]^d into [N]^d with N a power of two, by blowing each
// coordinate value up into an interval of length d+i or d+i+1.

#include <cstdint>
#include <vector>

#include "hypermono/func.hpp"
#include "hypermono/grid.hpp"

namespace hypermono {

struct ReductionPlan {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  /// Smallest i in [0, d) whose interval [n(d+i), n(d+i+1)] holds a power of two.
  std::uint32_t i = 0;
  /// Smallest power of two in that interval.
  std::uint32_t N = 0;
  /// n(d+i+1) - N: the number of short blocks.
  std::uint32_t m = 0;
  /// m blocks of length d+i followed by n-m blocks of length d+i+1.
  std::vector<std::uint32_t> block_sizes;
};

ReductionPlan plan(std::uint32_t n, std::uint32_t d);

/// Index of the block containing y (0 <= y < N).
Coord phi(const ReductionPlan& p, Coord y);

/// g(y) = f(phi(y_1), ..., phi(y_d)) on [N]^d. Each evaluation of g makes
/// exactly one evaluation of f; f must outlive the returned function.
BoolFunc lift(const ReductionPlan& p, const BoolFunc& f);

}  // namespace hypermono
