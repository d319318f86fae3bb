#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace hypermono {

/// Finalizer of SplitMix64; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// SplitMix64: a counter-based generator. The k-th output is mix64(seed + k*gamma),
/// so streams are cheap to derive and outputs never depend on thread scheduling.
///
/// All bounded draws below are implemented here rather than through
/// <random> distributions, whose outputs are implementation-defined; this keeps
/// reports byte-identical across standard libraries.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += kGamma;
    return mix64(state_);
  }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  bool coin() noexcept { return ((*this)() >> 63) != 0; }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) noexcept { return unit() < p; }

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// Seed of the stream for (master seed, experiment id, trial index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t experiment,
                          std::uint64_t trial) noexcept;

inline SplitMix64 trial_stream(std::uint64_t master, std::uint64_t experiment,
                               std::uint64_t trial) noexcept {
  return SplitMix64(derive_seed(master, experiment, trial));
}

/// Stable 64-bit id for an experiment label (FNV-1a).
std::uint64_t experiment_id(const char* label) noexcept;

/// Floyd's algorithm: a uniformly random size-k subset of {0..m-1}, sorted.
std::vector<std::uint32_t> sample_subset(std::uint32_t m, std::uint32_t k, SplitMix64& rng);

}  // namespace hypermono
