#include "hypermono/func.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>

#include "hypermono/error.hpp"
#include "hypermono/rng.hpp"

namespace hypermono {

BitTable::BitTable(Index size, bool value)
    : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  if (value && (size & 63) != 0) {
    words_.back() &= (std::uint64_t{1} << (size & 63)) - 1;
  }
}

BitTable BitTable::from_mask(std::uint64_t mask, Index size) {
  if (size > 64) throw DomainError("BitTable::from_mask supports at most 64 bits");
  BitTable t(size);
  if (size > 0) {
    t.words_[0] = size == 64 ? mask : (mask & ((std::uint64_t{1} << size) - 1));
  }
  return t;
}

Index BitTable::count_ones() const {
  Index c = 0;
  for (std::uint64_t w : words_) c += static_cast<Index>(std::popcount(w));
  return c;
}

BoolFunc::BoolFunc(GridShape shape, BitTable table)
    : shape_(std::move(shape)), backing_(std::make_shared<const BitTable>(std::move(table))) {
  if (std::get<TablePtr>(backing_)->size() != shape_.size()) {
    throw DomainError("table size " + std::to_string(std::get<TablePtr>(backing_)->size()) +
                      " does not match " + shape_.to_string());
  }
}

BoolFunc::BoolFunc(GridShape shape, Predicate predicate)
    : shape_(std::move(shape)), backing_(std::move(predicate)) {
  if (!std::get<Predicate>(backing_)) throw DomainError("empty predicate");
}

BoolFunc::BoolFunc(const BoolFunc& other)
    : shape_(other.shape_), backing_(other.backing_), queries_(other.queries()) {}

BoolFunc& BoolFunc::operator=(const BoolFunc& other) {
  if (this != &other) {
    shape_ = other.shape_;
    backing_ = other.backing_;
    queries_.store(other.queries(), std::memory_order_relaxed);
  }
  return *this;
}

BoolFunc::BoolFunc(BoolFunc&& other) noexcept
    : shape_(std::move(other.shape_)),
      backing_(std::move(other.backing_)),
      queries_(other.queries()) {}

BoolFunc& BoolFunc::operator=(BoolFunc&& other) noexcept {
  shape_ = std::move(other.shape_);
  backing_ = std::move(other.backing_);
  queries_.store(other.queries(), std::memory_order_relaxed);
  return *this;
}

bool BoolFunc::raw(Index idx) const {
  if (const auto* t = std::get_if<TablePtr>(&backing_)) return (*t)->get(idx);
  const Point p = point_of(shape_, idx);
  return std::get<Predicate>(backing_)(p.coords);
}

bool BoolFunc::eval(const Point& x) const {
  validate(shape_, x);
  queries_.fetch_add(1, std::memory_order_relaxed);
  if (const auto* t = std::get_if<TablePtr>(&backing_)) {
    return (*t)->get(linear_index(shape_, x));
  }
  return std::get<Predicate>(backing_)(x.coords);
}

bool BoolFunc::eval_index(Index idx) const {
  if (idx >= shape_.size()) {
    throw DomainError("index " + std::to_string(idx) + " out of range for " + shape_.to_string());
  }
  queries_.fetch_add(1, std::memory_order_relaxed);
  return raw(idx);
}

const BitTable& BoolFunc::table() const {
  if (const auto* t = std::get_if<TablePtr>(&backing_)) return **t;
  throw DomainError("function over " + shape_.to_string() + " is predicate-backed");
}

BitTable materialize(const BoolFunc& f, Index capacity) {
  if (f.shape().size() > capacity) {
    throw CapacityError("cannot materialize " + f.shape().to_string() + " (capacity " +
                        std::to_string(capacity) + " points)");
  }
  BitTable t(f.shape().size());
  for (Index k = 0; k < t.size(); ++k) t.set(k, f.eval_index(k));
  return t;
}

BoolFunc to_table_backed(const BoolFunc& f, Index capacity) {
  if (f.is_table_backed()) return f;
  return BoolFunc(f.shape(), materialize(f, capacity));
}

std::string to_string(Family family) {
  switch (family) {
    case Family::UniformRandom: return "uniform_random";
    case Family::MonotoneThreshold: return "monotone_threshold";
    case Family::RandomMonotone: return "random_monotone";
    case Family::AntiSlab: return "anti_slab";
    case Family::BlockParity: return "block_parity";
    case Family::NoisyMonotone: return "noisy_monotone";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::UniformRandom, Family::MonotoneThreshold, Family::RandomMonotone,
                   Family::AntiSlab, Family::BlockParity, Family::NoisyMonotone}) {
    if (to_string(f) == name) return f;
  }
  throw DomainError("unknown function family '" + name + "'");
}

bool is_monotone_family(Family family) {
  return family == Family::MonotoneThreshold || family == Family::RandomMonotone;
}

namespace {

BitTable tabulate(const GridShape& shape, const BoolFunc::Predicate& pred) {
  BitTable t(shape.size());
  Point p;
  p.coords.assign(shape.d(), 0);
  for (Index k = 0; k < shape.size(); ++k) {
    t.set(k, pred(p.coords));
    for (std::uint32_t i = 0; i < shape.d(); ++i) {
      if (++p.coords[i] < shape.n()) break;
      p.coords[i] = 0;
    }
  }
  return t;
}

BitTable random_monotone_table(const GridShape& shape, std::uint32_t seed_points,
                               SplitMix64& rng) {
  BitTable t(shape.size());
  for (std::uint32_t s = 0; s < seed_points; ++s) t.set(rng.below(shape.size()), true);
  // Predecessors x - e_i have smaller linear index, so one ascending pass
  // closes the seed set upward.
  for (Index k = 0; k < shape.size(); ++k) {
    if (t.get(k)) continue;
    for (std::uint32_t i = 0; i < shape.d(); ++i) {
      if (coord_of(shape, k, i) > 0 && t.get(k - shape.stride(i))) {
        t.set(k, true);
        break;
      }
    }
  }
  return t;
}

BoolFunc::Predicate formula_predicate(Family family, const GridShape& shape,
                                      const FamilyParams& params) {
  const std::uint32_t n = shape.n();
  switch (family) {
    case Family::MonotoneThreshold: {
      std::vector<double> w = params.weights;
      if (w.empty()) w.assign(shape.d(), 1.0);
      if (w.size() != shape.d()) {
        throw DomainError("monotone_threshold needs " + std::to_string(shape.d()) + " weights");
      }
      double total = 0.0;
      for (double wi : w) {
        if (!(wi >= 0.0) || !std::isfinite(wi)) {
          throw DomainError("monotone_threshold weights must be finite and nonnegative");
        }
        total += wi * (n - 1);
      }
      double theta = params.theta;
      if (std::isnan(theta)) theta = total / 2.0;
      return [w = std::move(w), theta](std::span<const Coord> x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i];
        return s >= theta;
      };
    }
    case Family::AntiSlab: {
      if (params.dim >= shape.d()) throw DomainError("anti_slab dimension out of range");
      const std::uint32_t dim = params.dim;
      const Coord half = n / 2;
      return [dim, half](std::span<const Coord> x) { return x[dim] < half; };
    }
    case Family::BlockParity:
      return [n](std::span<const Coord> x) {
        std::uint64_t blocks = 0;
        for (Coord c : x) blocks += (2 * std::uint64_t{c}) / n;
        return blocks % 2 == 0;
      };
    default:
      return {};
  }
}

}  // namespace

BoolFunc generate(Family family, const GridShape& shape, const FamilyParams& params,
                  std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, experiment_id(to_string(family).c_str()), 0));
  const bool fits = shape.size() <= params.table_capacity;

  switch (family) {
    case Family::MonotoneThreshold:
    case Family::AntiSlab:
    case Family::BlockParity: {
      auto pred = formula_predicate(family, shape, params);
      const bool want_table =
          params.backing == Backing::Table || (params.backing == Backing::Auto && fits);
      if (!want_table) return BoolFunc(shape, std::move(pred));
      if (!fits) {
        throw CapacityError(to_string(family) + " table over " + shape.to_string() +
                            " exceeds capacity");
      }
      return BoolFunc(shape, tabulate(shape, pred));
    }
    case Family::UniformRandom:
    case Family::RandomMonotone:
    case Family::NoisyMonotone:
      break;
  }

  if (params.backing == Backing::Predicate) {
    throw DomainError(to_string(family) + " has no predicate form");
  }
  if (!fits) {
    throw CapacityError(to_string(family) + " over " + shape.to_string() +
                        " exceeds table capacity " + std::to_string(params.table_capacity));
  }

  if (family == Family::UniformRandom) {
    BitTable t(shape.size());
    for (Index k = 0; k < t.size(); ++k) t.set(k, rng.coin());
    return BoolFunc(shape, std::move(t));
  }
  if (family == Family::RandomMonotone) {
    return BoolFunc(shape, random_monotone_table(shape, params.seed_points, rng));
  }

  // NoisyMonotone
  if (!(params.rho >= 0.0 && params.rho <= 1.0)) {
    throw DomainError("noisy_monotone requires rho in [0, 1]");
  }
  if (!is_monotone_family(params.base)) {
    throw DomainError("noisy_monotone base must be a monotone family");
  }
  FamilyParams base_params = params;
  base_params.backing = Backing::Table;
  BitTable t = generate(params.base, shape, base_params, seed).table();
  for (Index k = 0; k < t.size(); ++k) {
    if (rng.bernoulli(params.rho)) t.flip(k);
  }
  return BoolFunc(shape, std::move(t));
}

bool is_monotone(const GridShape& shape, const BitTable& table) {
  for (Index k = 0; k < shape.size(); ++k) {
    if (!table.get(k)) continue;
    for (std::uint32_t i = 0; i < shape.d(); ++i) {
      if (coord_of(shape, k, i) + 1 < shape.n() && !table.get(k + shape.stride(i))) return false;
    }
  }
  return true;
}

bool is_monotone(const BoolFunc& f, Index capacity) {
  if (f.is_table_backed()) return is_monotone(f.shape(), f.table());
  return is_monotone(f.shape(), materialize(f, capacity));
}

BoolFunc restrict_line(const BoolFunc& f, std::uint32_t dim, std::span<const Coord> fixed) {
  const GridShape& shape = f.shape();
  if (dim >= shape.d()) throw DomainError("restrict_line: dimension out of range");
  if (fixed.size() + 1 != shape.d()) {
    throw DomainError("restrict_line: expected " + std::to_string(shape.d() - 1) +
                      " fixed coordinates");
  }
  for (Coord c : fixed) {
    if (c >= shape.n()) throw DomainError("restrict_line: fixed coordinate out of range");
  }
  Point base;
  base.coords.reserve(shape.d());
  for (std::uint32_t i = 0, j = 0; i < shape.d(); ++i) {
    base.coords.push_back(i == dim ? 0 : fixed[j++]);
  }
  const BoolFunc* source = &f;
  return BoolFunc(GridShape(shape.n(), 1), [source, base, dim](std::span<const Coord> t) {
    Point p = base;
    p.coords[dim] = t[0];
    return source->eval(p);
  });
}

BitTable sort_line(const BitTable& line) {
  const Index ones = line.count_ones();
  BitTable out(line.size());
  for (Index k = line.size() - ones; k < line.size(); ++k) out.set(k, true);
  return out;
}

BoolFunc sort_line(const BoolFunc& g) {
  if (g.shape().d() != 1) throw DomainError("sort_line requires a one-dimensional function");
  BitTable values(g.shape().size());
  for (Index k = 0; k < values.size(); ++k) values.set(k, g.eval_index(k));
  return BoolFunc(g.shape(), sort_line(values));
}

namespace {

constexpr char kMagic[4] = {'A', 'G', 'F', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) throw FormatError("truncated header");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
  return v;
}

}  // namespace

void save(const BoolFunc& f, std::ostream& out) {
  const BoolFunc backed = to_table_backed(f);
  const BitTable& t = backed.table();
  out.write(kMagic, 4);
  put_u64(out, f.shape().n());
  put_u64(out, f.shape().d());
  const Index bytes = (t.size() + 7) / 8;
  auto words = t.words();
  for (Index b = 0; b < bytes; ++b) {
    out.put(static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xff));
  }
  if (!out) throw FormatError("write failed");
}

BoolFunc load(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4)) throw FormatError("truncated header");
  if (!std::equal(magic, magic + 4, kMagic)) throw FormatError("bad magic (expected AGF1)");
  const std::uint64_t n = get_u64(in);
  const std::uint64_t d = get_u64(in);
  if (n == 0 || d == 0 || n > std::numeric_limits<std::uint32_t>::max() ||
      d > std::numeric_limits<std::uint32_t>::max()) {
    throw FormatError("invalid shape in header");
  }
  std::optional<GridShape> shape;
  try {
    shape.emplace(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(d));
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid shape in header: ") + e.what());
  }
  if (shape->size() > kDefaultTableCapacity * 64) {
    throw FormatError("payload for " + shape->to_string() + " is too large");
  }
  BitTable t(shape->size());
  const Index bytes = (shape->size() + 7) / 8;
  for (Index b = 0; b < bytes; ++b) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) {
      throw FormatError("truncated payload: expected " + std::to_string(bytes) + " bytes for " +
                        shape->to_string());
    }
    for (int bit = 0; bit < 8; ++bit) {
      const Index k = b * 8 + static_cast<Index>(bit);
      const bool v = (c >> bit) & 1;
      if (k < t.size()) {
        t.set(k, v);
      } else if (v) {
        throw FormatError("nonzero padding bits after " + std::to_string(t.size()) + " values");
      }
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("payload longer than n^d bits for " + shape->to_string());
  }
  return BoolFunc(*shape, std::move(t));
}

void save_file(const BoolFunc& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  save(f, out);
}

BoolFunc load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return load(in);
}

}  // namespace hypermono
