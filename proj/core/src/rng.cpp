#include "hypermono/rng.hpp"

#include <algorithm>

namespace hypermono {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
  // Lemire's multiply-and-reject; unbiased.
  std::uint64_t x = (*this)();
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<u128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t experiment,
                          std::uint64_t trial) noexcept {
  std::uint64_t h = mix64(master + SplitMix64::kGamma);
  h = mix64(h ^ (experiment + 0x632be59bd9b4e019ULL));
  h = mix64(h ^ (trial + 0x8cb92ba72f3d8dd7ULL));
  return h;
}

std::uint64_t experiment_id(const char* label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char* p = label; *p != '\0'; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::uint32_t> sample_subset(std::uint32_t m, std::uint32_t k, SplitMix64& rng) {
  std::vector<std::uint32_t> chosen;
  if (k == 0) return chosen;
  chosen.reserve(k);
  for (std::uint32_t j = m - k; j < m; ++j) {
    const auto t = static_cast<std::uint32_t>(rng.below(std::uint64_t{j} + 1));
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(j);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace hypermono
