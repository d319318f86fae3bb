#pragma once

// Boolean functions over [n]^d with query counting, test-family generators,
// line restriction/sorting, and the binary AGF1 file format.

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hypermono/grid.hpp"

namespace hypermono {

/// Packed bit vector; bit k is the value at linear index k.
class BitTable {
 public:
  BitTable() = default;
  explicit BitTable(Index size, bool value = false);

  /// Low `size` bits of mask (size <= 64).
  static BitTable from_mask(std::uint64_t mask, Index size);

  Index size() const { return size_; }
  bool get(Index k) const { return (words_[k >> 6] >> (k & 63)) & 1u; }
  void set(Index k, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (k & 63);
    if (v) {
      words_[k >> 6] |= bit;
    } else {
      words_[k >> 6] &= ~bit;
    }
  }
  void flip(Index k) { words_[k >> 6] ^= std::uint64_t{1} << (k & 63); }
  Index count_ones() const;

  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const BitTable&) const = default;

 private:
  Index size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Default ceiling on table-backed functions (n^d points).
inline constexpr Index kDefaultTableCapacity = Index{1} << 24;

/// f : [n]^d -> {0,1} behind query access. Evaluations through eval()/eval_index()
/// increment a thread-safe counter; table() gives oracles direct read access
/// without counting.
class BoolFunc {
 public:
  using Predicate = std::function<bool(std::span<const Coord>)>;

  BoolFunc(GridShape shape, BitTable table);
  BoolFunc(GridShape shape, Predicate predicate);

  /// Copies share the immutable backing but get their own counter, starting
  /// from the source's current count.
  BoolFunc(const BoolFunc& other);
  BoolFunc& operator=(const BoolFunc& other);
  BoolFunc(BoolFunc&& other) noexcept;
  BoolFunc& operator=(BoolFunc&& other) noexcept;

  const GridShape& shape() const { return shape_; }

  bool eval(const Point& x) const;
  bool eval_index(Index idx) const;

  bool is_table_backed() const { return std::holds_alternative<TablePtr>(backing_); }
  /// Throws DomainError for predicate-backed functions.
  const BitTable& table() const;

  std::uint64_t queries() const { return queries_.load(std::memory_order_relaxed); }
  void reset_queries() { queries_.store(0, std::memory_order_relaxed); }

 private:
  using TablePtr = std::shared_ptr<const BitTable>;

  bool raw(Index idx) const;

  GridShape shape_;
  std::variant<TablePtr, Predicate> backing_;
  mutable std::atomic<std::uint64_t> queries_{0};
};

/// Evaluates every point through eval() and returns the values as a table.
/// Throws CapacityError above `capacity` points.
BitTable materialize(const BoolFunc& f, Index capacity = kDefaultTableCapacity);

/// Table-backed copy of f (f itself if already table-backed).
BoolFunc to_table_backed(const BoolFunc& f, Index capacity = kDefaultTableCapacity);

enum class Family {
  UniformRandom,
  MonotoneThreshold,
  RandomMonotone,
  AntiSlab,
  BlockParity,
  NoisyMonotone,
};

std::string to_string(Family family);
/// Accepts the snake_case names used on the command line; throws DomainError.
Family parse_family(const std::string& name);
bool is_monotone_family(Family family);

enum class Backing { Auto, Table, Predicate };

struct FamilyParams {
  /// monotone_threshold: nonnegative weights (empty = all ones).
  std::vector<double> weights;
  /// monotone_threshold: threshold; NaN selects half the maximum weighted sum.
  double theta = std::numeric_limits<double>::quiet_NaN();
  /// anti_slab: the dimension that decides the value.
  std::uint32_t dim = 0;
  /// random_monotone: number of random seed points whose up-set is 1.
  std::uint32_t seed_points = 3;
  /// noisy_monotone: flip probability and monotone base family.
  double rho = 0.05;
  Family base = Family::RandomMonotone;

  Backing backing = Backing::Auto;
  Index table_capacity = kDefaultTableCapacity;
};

/// Deterministic given (family, shape, params, seed). Auto backing uses a
/// table within capacity and otherwise a predicate where the family has a
/// closed form; random families beyond capacity raise CapacityError.
BoolFunc generate(Family family, const GridShape& shape, const FamilyParams& params,
                  std::uint64_t seed);

/// True iff f(x) <= f(x + e_i) for every unit step, which suffices by
/// transitivity. Predicate-backed functions are evaluated exhaustively up to
/// `capacity` points.
bool is_monotone(const BoolFunc& f, Index capacity = kDefaultTableCapacity);
bool is_monotone(const GridShape& shape, const BitTable& table);

/// t -> f(fixed with coordinate dim set to t). `fixed` lists the other d-1
/// coordinates in dimension order. The line forwards queries to f, which must
/// outlive it.
BoolFunc restrict_line(const BoolFunc& f, std::uint32_t dim, std::span<const Coord> fixed);

/// 0^j 1^(n-j) where j is the number of zeros of g (d = 1).
BoolFunc sort_line(const BoolFunc& g);
BitTable sort_line(const BitTable& line);

void save(const BoolFunc& f, std::ostream& out);
BoolFunc load(std::istream& in);
void save_file(const BoolFunc& f, const std::string& path);
BoolFunc load_file(const std::string& path);

}  // namespace hypermono
