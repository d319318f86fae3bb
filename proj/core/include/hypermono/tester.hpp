#pragma once

// The random-walk monotonicity tester over the augmented hypergrid, the edge
// tester, amplification, and Monte-Carlo estimators built on them.

#include <cstdint>
#include <span>
#include <vector>

#include "hypermono/func.hpp"
#include "hypermono/grid.hpp"
#include "hypermono/rng.hpp"

namespace hypermono {

enum class Verdict { Accept, Reject };

struct TestTranscript {
  std::uint32_t tau = 1;
  Point x;
  /// One matching per dimension (the edge tester records only the sampled one).
  std::vector<MatchingId> matchings;
  /// Dimensions in which x is a lower endpoint of its matching, ascending.
  std::vector<std::uint32_t> S;
  /// Dimensions actually stepped; empty when |S| < tau.
  std::vector<std::uint32_t> T;
  Point y;
  bool fx = false;
  bool fy = false;
  Verdict verdict = Verdict::Accept;
  std::uint32_t queries_used = 0;
};

struct TesterVerdict {
  bool accepted = true;
  std::uint64_t invocations = 0;
  std::uint64_t total_queries = 0;
};

/// Largest p >= 0 with 2^p <= sqrt(d / (10 log2 d)); 0 when d <= 2 or the
/// bound is below 1.
std::uint32_t max_tau_exponent(std::uint32_t d);

/// tau = 2^t with t uniform in {0..max_tau_exponent(d)}.
std::uint32_t sample_tau(std::uint32_t d, SplitMix64& rng);

/// Dimensions i where x is a lower endpoint of matchings[i].
std::vector<std::uint32_t> lower_dimensions(const GridShape& shape, const Point& x,
                                            std::span<const MatchingId> matchings);

/// Deterministic core of one test: given tau, x, the per-dimension matchings
/// and the stepped set T (a size-tau subset of S, or empty when |S| < tau),
/// builds y and queries f. Throws DomainError if T is inconsistent with S.
TestTranscript run_walk(const BoolFunc& f, std::uint32_t tau, const Point& x,
                        std::vector<MatchingId> matchings, std::vector<std::uint32_t> T);

/// One full invocation: tau, x, matchings, and T all drawn from rng.
TestTranscript single_test(const BoolFunc& f, SplitMix64& rng);

/// As single_test with tau fixed (Steps 2-6 only).
TestTranscript single_test_fixed_tau(const BoolFunc& f, std::uint32_t tau, SplitMix64& rng);

/// Samples an augmented edge uniformly from the whole edge set and rejects
/// iff it is violated.
TestTranscript edge_test(const BoolFunc& f, SplitMix64& rng);

/// R = ceil(cal * d^(5/6) * L(d)^(3/2) * (L(n) + L(d))^(4/3) * eps^(-4/3)) with
/// L(v) = max(1, log2 v).
std::uint64_t repetition_count(std::uint32_t n, std::uint32_t d, double eps, double calibration);

/// The repetition count before rounding, at calibration 1.
double repetition_scale(std::uint32_t n, std::uint32_t d, double eps);

/// Runs single_test up to repetition_count times, stopping at the first
/// rejection.
TesterVerdict amplified_test(const BoolFunc& f, double eps, double calibration, SplitMix64& rng);

struct RateEstimate {
  std::uint64_t trials = 0;
  std::uint64_t rejections = 0;
  double rate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
};

/// 95% Wilson score interval for k successes out of n.
RateEstimate wilson(std::uint64_t successes, std::uint64_t trials);

/// Fraction of rejecting single_test invocations. Trial k draws from
/// trial_stream(master_seed, experiment, k), so the result does not depend
/// on `workers`.
RateEstimate detection_rate(const BoolFunc& f, std::uint64_t trials, std::uint64_t master_seed,
                            std::uint64_t experiment, unsigned workers = 1);

/// Estimated fraction of tau-non-persistent points: x counts when more than
/// a tenth of `inner_samples` walks from x (fixed tau) change the value of f.
double persistence_fraction(const BoolFunc& f, std::uint32_t tau, std::uint64_t outer_samples,
                            std::uint64_t inner_samples, std::uint64_t master_seed,
                            std::uint64_t experiment, unsigned workers = 1);

}  // namespace hypermono
