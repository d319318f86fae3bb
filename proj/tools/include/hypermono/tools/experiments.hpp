#pragma once

// Batch experiments behind the command-line tool and the verification suite.
// Every sweep is deterministic in (config, seed) and independent of the
// worker count.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hypermono/func.hpp"
#include "hypermono/oracle.hpp"
#include "hypermono/rational.hpp"

namespace hypermono::tools {

/// Shortest decimal that round-trips the double.
std::string format_double(double v);
std::string format_rational(const Rational& q);

/// Exact distance to monotonicity of a generated function. Uses the exact
/// oracle when the grid fits kOracleCapacity, 1/2 for anti_slab, and the
/// n = 2 base grid for block_parity (a block blow-up keeps the distance).
/// Throws CapacityError otherwise.
Rational family_distance(Family family, const GridShape& shape, const FamilyParams& params,
                         std::uint64_t seed);

struct RateConfig {
  std::vector<std::uint32_t> ns;
  std::vector<std::uint32_t> ds;
  std::vector<Family> families;
  FamilyParams params;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

inline constexpr const char* kRateHeader =
    "n,d,family,eps_true,trials,rejections,rate,wilson_lo,wilson_hi";

void write_rate_csv(const RateConfig& cfg, std::ostream& out);

struct IsoConfig {
  std::uint32_t n = 2;
  std::uint32_t d = 2;
  /// Every function of the grid (needs n^d <= 24); otherwise `samples`
  /// functions of `family`.
  bool exhaustive = true;
  std::uint64_t samples = 1000;
  Family family = Family::UniformRandom;
  FamilyParams params;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

inline constexpr const char* kIsoHeader =
    "n,d,function_id,eps,I,I_minus,gamma_minus,r,margulis_ratio,edge_ratio,vertex_ratio";

struct IsoSummary {
  std::uint64_t functions = 0;
  std::uint64_t far = 0;
  /// Functions with eps > 0 but some ratio <= 0.
  std::uint64_t nonpositive = 0;
  std::optional<Rational> min_margulis;
  std::optional<Rational> min_edge;
  std::optional<Rational> min_vertex;
};

/// Writes one row per eps-far function when `out` is non-null.
IsoSummary run_isoperimetry(const IsoConfig& cfg, std::ostream* out);

struct PersistenceConfig {
  std::uint32_t n = 8;
  std::uint32_t d = 4;
  std::vector<Family> families;
  FamilyParams params;
  /// Empty selects every power of two up to d.
  std::vector<std::uint32_t> taus;
  std::uint64_t outer = 2000;
  std::uint64_t inner = 200;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

inline constexpr const char* kPersistenceHeader =
    "n,d,tau,family,nonpersistent_fraction,reference_bound";

void write_persistence_csv(const PersistenceConfig& cfg, std::ostream& out);

/// Exact probability, over the tester's full randomness, that one
/// invocation rejects; with the number of rejecting outcomes.
struct ExactRejection {
  Rational probability;
  std::uint64_t rejecting_outcomes = 0;
  std::uint64_t outcomes = 0;
};

ExactRejection exact_rejection(const BoolFunc& f);

/// Per-distance-class outcome of decomposing and routing M*.
struct ClassRouting {
  std::uint32_t ell = 0;
  std::size_t pairs = 0;
  std::size_t parts = 0;
  std::size_t good_parts = 0;
  bool independent = true;
  bool partition = true;
  std::size_t paths = 0;
  bool paths_disjoint = true;
  bool paths_hit_violation = true;
  bool degree_monotone = true;
  bool layer_dichotomy = true;
  std::string error;
};

struct StructureReport {
  std::uint64_t gamma_count = 0;
  std::vector<ClassRouting> classes;

  bool ok() const;
};

StructureReport structure_report(const GridShape& shape, const BitTable& table);

}  // namespace hypermono::tools
