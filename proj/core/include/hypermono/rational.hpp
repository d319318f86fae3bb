#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace hypermono {

/// Exact rational arithmetic. All normalized quantities in this library are
/// counts over n^d (dyadic when n is a power of two), so 64-bit parts suffice
/// at desk scale.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

inline Rational abs(const Rational& q) { return q < 0 ? -q : q; }

}  // namespace hypermono
