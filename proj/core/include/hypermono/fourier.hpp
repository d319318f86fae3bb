#pragma once

// Walsh analysis on [n]^d (n a power of two) and the exact line inequalities
// relating influence to the longest-step Walsh coefficient.

#include <cstdint>
#include <span>
#include <vector>

#include "hypermono/func.hpp"
#include "hypermono/grid.hpp"
#include "hypermono/rational.hpp"

namespace hypermono {

/// Per-dimension bit sets S_1..S_d, each a mask over bit positions
/// {0..log2 n - 1}. Spectrum position k holds the index whose masks are the
/// coordinates of point_of(shape, k).
struct WalshIndex {
  std::vector<Coord> masks;

  bool operator==(const WalshIndex&) const = default;
};

WalshIndex walsh_index_of(const GridShape& shape, Index position);
Index position_of(const GridShape& shape, const WalshIndex& idx);

/// e_{ij}: bit j in dimension i, empty elsewhere.
WalshIndex edge_index(const GridShape& shape, std::uint32_t i, std::uint32_t j);

/// prod_k (-1)^popcount(x_k & S_k); returns +1 or -1.
int walsh_value(const GridShape& shape, const WalshIndex& idx, const Point& x);

/// Symmetric difference of bit sets (w_{S xor T} = w_S * w_T).
WalshIndex symmetric_difference(const WalshIndex& a, const WalshIndex& b);

/// Coefficients E_x[f(x) w_S(x)] for every S via the fast butterfly.
std::vector<double> transform(const GridShape& shape, std::span<const double> table);

/// Inverse of transform: f(x) = sum_S fhat(S) w_S(x).
std::vector<double> inverse_transform(const GridShape& shape, std::span<const double> spectrum);

/// Unnormalized integer butterfly; applying it twice multiplies by n^d.
std::vector<std::int64_t> hadamard(const GridShape& shape, std::vector<std::int64_t> values);

/// Table of 2f - 1 and of f as doubles.
std::vector<double> pm_table(const BitTable& table);
std::vector<double> zero_one_table(const BitTable& table);

struct EdgeCoefficient {
  /// E_x[f(x) w_{e_ij}(x)] with f in {0,1}.
  Rational by_expectation;
  /// (1/2) E over H^0_{i,j} pairs of f(lower) - f(upper).
  Rational by_matching;
};

EdgeCoefficient edge_coefficient(const GridShape& shape, const BitTable& table, std::uint32_t i,
                                 std::uint32_t j);
EdgeCoefficient edge_coefficient(const BoolFunc& f, std::uint32_t i, std::uint32_t j);

struct LineDeltaReport {
  Rational I_plus;
  Rational I_minus;
  /// I_plus - I_minus.
  Rational delta_I;
  /// Coefficient of the longest-step character e_{0, log2 n - 1}.
  Rational e1_coeff;
  /// delta_I <= log2 n * (4 I_minus - e1_coeff).
  bool inequality_holds = false;
  bool monotone = false;
  /// For monotone lines: delta_I <= log2 n * (-e1_coeff). True otherwise.
  bool monotone_claim_holds = true;
};

/// Exact influence quantities of a line (d = 1, n a power of two, n >= 4).
LineDeltaReport line_delta_report(const BitTable& line);
LineDeltaReport line_delta_report(const BoolFunc& g);

struct SortComparison {
  /// delta_I(sorted) >= delta_I(g).
  bool delta_sorted_ge = false;
  /// -e1(sorted) <= -e1(g) + 4 I_minus(g).
  bool final_claim_holds = false;
};

SortComparison sort_comparisons(const BitTable& line);
SortComparison sort_comparisons(const BoolFunc& g);

struct AggregationCheck {
  /// sum_i |fhat(e_{i, log2 n - 1})|
  Rational lhs;
  /// I / log2 n - 6 I_minus
  Rational rhs;
  bool holds = false;
};

/// Summed form of the line inequality over all dimensions; n >= 4.
AggregationCheck aggregation_check(const GridShape& shape, const BitTable& table);

}  // namespace hypermono
