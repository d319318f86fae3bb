#pragma once

// Frozen outputs of deterministic sweeps. Each is recomputed by the
// verification suite and must match exactly; regenerate with
// `hypermono calibrate` and `hypermono isoperimetry --exhaustive`.

#include <array>
#include <cstdint>

namespace hypermono::tools::fixtures {

/// Seed the frozen values were produced with.
inline constexpr std::uint64_t kSeed = 1;

inline constexpr double kCalibration = 0.979;

struct IsoMinima {
  std::uint32_t n;
  std::uint32_t d;
  const char* margulis;
  const char* edge;
  const char* vertex;
};

inline constexpr std::array<IsoMinima, 4> kIsoMinima{{
    {2, 2, "1", "1", "1"},
    {2, 3, "1", "1", "1"},
    {3, 2, "1", "1", "1"},
    {4, 2, "1", "1", "24/25"},
}};

}  // namespace hypermono::tools::fixtures
