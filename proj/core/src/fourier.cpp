#include "hypermono/fourier.hpp"

#include <bit>

#include "hypermono/error.hpp"
#include "hypermono/oracle.hpp"

namespace hypermono {

namespace {

void require_table(const GridShape& shape, std::size_t size) {
  shape.require_pow2("Walsh analysis");
  if (shape.size() > kDefaultTableCapacity) {
    throw CapacityError("Walsh transform over " + shape.to_string() + " exceeds capacity");
  }
  if (size != shape.size()) throw DomainError("table size does not match " + shape.to_string());
}

template <class T>
void butterfly(std::vector<T>& v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const T a = v[j];
        const T b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

Rational ratio(std::int64_t num, std::uint64_t den) {
  return Rational(num, static_cast<std::int64_t>(den));
}

}  // namespace

WalshIndex walsh_index_of(const GridShape& shape, Index position) {
  shape.require_pow2("Walsh indices");
  return WalshIndex{point_of(shape, position).coords};
}

Index position_of(const GridShape& shape, const WalshIndex& idx) {
  shape.require_pow2("Walsh indices");
  return linear_index(shape, Point(idx.masks));
}

WalshIndex edge_index(const GridShape& shape, std::uint32_t i, std::uint32_t j) {
  if (i >= shape.d() || j >= shape.log_n()) throw DomainError("edge index out of range");
  WalshIndex idx{std::vector<Coord>(shape.d(), 0)};
  idx.masks[i] = Coord{1} << j;
  return idx;
}

int walsh_value(const GridShape& shape, const WalshIndex& idx, const Point& x) {
  shape.require_pow2("Walsh functions");
  validate(shape, x);
  if (idx.masks.size() != shape.d()) throw DomainError("Walsh index has the wrong dimension");
  int bits = 0;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    if (idx.masks[k] >= shape.n()) throw DomainError("Walsh index bit out of range");
    bits += std::popcount(x[k] & idx.masks[k]);
  }
  return bits % 2 == 0 ? 1 : -1;
}

WalshIndex symmetric_difference(const WalshIndex& a, const WalshIndex& b) {
  if (a.masks.size() != b.masks.size()) throw DomainError("Walsh indices differ in dimension");
  WalshIndex out{a.masks};
  for (std::size_t k = 0; k < out.masks.size(); ++k) out.masks[k] ^= b.masks[k];
  return out;
}

std::vector<double> transform(const GridShape& shape, std::span<const double> table) {
  require_table(shape, table.size());
  std::vector<double> v(table.begin(), table.end());
  butterfly(v);
  const double scale = 1.0 / static_cast<double>(shape.size());
  for (double& c : v) c *= scale;
  return v;
}

std::vector<double> inverse_transform(const GridShape& shape, std::span<const double> spectrum) {
  require_table(shape, spectrum.size());
  std::vector<double> v(spectrum.begin(), spectrum.end());
  butterfly(v);
  return v;
}

std::vector<std::int64_t> hadamard(const GridShape& shape, std::vector<std::int64_t> values) {
  require_table(shape, values.size());
  butterfly(values);
  return values;
}

std::vector<double> pm_table(const BitTable& table) {
  std::vector<double> v(table.size());
  for (Index k = 0; k < table.size(); ++k) v[k] = table.get(k) ? 1.0 : -1.0;
  return v;
}

std::vector<double> zero_one_table(const BitTable& table) {
  std::vector<double> v(table.size());
  for (Index k = 0; k < table.size(); ++k) v[k] = table.get(k) ? 1.0 : 0.0;
  return v;
}

EdgeCoefficient edge_coefficient(const GridShape& shape, const BitTable& table, std::uint32_t i,
                                 std::uint32_t j) {
  const WalshIndex idx = edge_index(shape, i, j);
  if (table.size() != shape.size()) throw DomainError("table size does not match shape");
  std::int64_t sum = 0;
  for (Index k = 0; k < shape.size(); ++k) {
    if (table.get(k)) sum += walsh_value(shape, idx, point_of(shape, k));
  }
  std::int64_t diff = 0;
  for_each_matching_edge(shape, MatchingId{i, j, 0}, [&](Index lo, Index hi) {
    diff += static_cast<int>(table.get(lo)) - static_cast<int>(table.get(hi));
  });
  // |H^0_{ij}| = n^d / 2, so half the pair average is diff / n^d.
  return {ratio(sum, shape.size()), ratio(diff, shape.size())};
}

EdgeCoefficient edge_coefficient(const BoolFunc& f, std::uint32_t i, std::uint32_t j) {
  return edge_coefficient(f.shape(), materialize(f), i, j);
}

LineDeltaReport line_delta_report(const BitTable& line) {
  const GridShape shape(static_cast<std::uint32_t>(line.size()), 1);
  shape.require_pow2("line influence");
  if (shape.n() < 4) throw DomainError("line influence needs n >= 4");
  const ViolatedEdges edges = violated_aug_edges(shape, line);
  LineDeltaReport rep;
  rep.I_plus = ratio(static_cast<std::int64_t>(edges.plus.size()), shape.size());
  rep.I_minus = ratio(static_cast<std::int64_t>(edges.minus.size()), shape.size());
  rep.delta_I = rep.I_plus - rep.I_minus;
  const std::int64_t log_n = shape.log_n();
  rep.e1_coeff = edge_coefficient(shape, line, 0, shape.log_n() - 1).by_matching;
  rep.inequality_holds = rep.delta_I <= Rational(log_n) * (Rational(4) * rep.I_minus - rep.e1_coeff);
  rep.monotone = is_monotone(shape, line);
  if (rep.monotone) rep.monotone_claim_holds = rep.delta_I <= Rational(log_n) * (-rep.e1_coeff);
  return rep;
}

LineDeltaReport line_delta_report(const BoolFunc& g) {
  if (g.shape().d() != 1) throw DomainError("line_delta_report needs d = 1");
  return line_delta_report(materialize(g));
}

SortComparison sort_comparisons(const BitTable& line) {
  const LineDeltaReport g = line_delta_report(line);
  const LineDeltaReport s = line_delta_report(sort_line(line));
  SortComparison out;
  out.delta_sorted_ge = s.delta_I >= g.delta_I;
  out.final_claim_holds = -s.e1_coeff <= -g.e1_coeff + Rational(4) * g.I_minus;
  return out;
}

SortComparison sort_comparisons(const BoolFunc& g) {
  if (g.shape().d() != 1) throw DomainError("sort_comparisons needs d = 1");
  return sort_comparisons(materialize(g));
}

AggregationCheck aggregation_check(const GridShape& shape, const BitTable& table) {
  shape.require_pow2("the aggregated influence bound");
  if (shape.n() < 4) throw DomainError("the aggregated influence bound needs n >= 4");
  AggregationCheck out;
  out.lhs = Rational(0);
  for (std::uint32_t i = 0; i < shape.d(); ++i) {
    out.lhs += abs(edge_coefficient(shape, table, i, shape.log_n() - 1).by_matching);
  }
  const ViolatedEdges edges = violated_aug_edges(shape, table);
  const Rational I =
      ratio(static_cast<std::int64_t>(edges.plus.size() + edges.minus.size()), shape.size());
  const Rational I_minus = ratio(static_cast<std::int64_t>(edges.minus.size()), shape.size());
  out.rhs = I / Rational(shape.log_n()) - Rational(6) * I_minus;
  out.holds = out.lhs >= out.rhs;
  return out;
}

}  // namespace hypermono
