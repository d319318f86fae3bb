#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "hypermono/error.hpp"
#include "hypermono/rng.hpp"
#include "hypermono/tester.hpp"
#include "hypermono/tools/experiments.hpp"
#include "hypermono/tools/fixtures.hpp"
#include "support.hpp"

namespace hypermono {
namespace {

using testing::line_function;

// Rejection probability of one invocation when tau is always 1 (d <= 2 at
// desk scale), by direct enumeration of (x, a_i, c_i, chosen dimension).
Rational tau_one_rejection(const BoolFunc& f) {
  const GridShape& s = f.shape();
  const std::uint32_t L = s.log_n();
  std::uint64_t combos = 1;
  for (std::uint32_t i = 0; i < s.d(); ++i) combos *= 2 * L;
  Rational total(0);
  for (Index x = 0; x < s.size(); ++x) {
    const Point px = point_of(s, x);
    for (std::uint64_t combo = 0; combo < combos; ++combo) {
      std::vector<Point> ups;
      std::uint64_t c = combo;
      for (std::uint32_t i = 0; i < s.d(); ++i) {
        const std::uint32_t a = static_cast<std::uint32_t>((c / 2) % L);
        const std::uint32_t parity = static_cast<std::uint32_t>(c % 2);
        c /= 2 * L;
        const Coord v = px[i];
        const Coord step = Coord{1} << a;
        if (((v >> a) & 1u) == parity && v + step < s.n()) {
          Point y = px;
          y[i] += step;
          ups.push_back(y);
        }
      }
      if (ups.empty() || !f.eval(px)) continue;
      std::int64_t bad = 0;
      for (const Point& y : ups) bad += f.eval(y) ? 0 : 1;
      total += Rational(bad, static_cast<std::int64_t>(ups.size()));
    }
  }
  return total / Rational(static_cast<std::int64_t>(s.size() * combos));
}

TEST(Tau, ExponentBound) {
  EXPECT_EQ(max_tau_exponent(1), 0u);
  EXPECT_EQ(max_tau_exponent(2), 0u);
  EXPECT_EQ(max_tau_exponent(64), 0u);
  EXPECT_EQ(max_tau_exponent(4096), 2u);
  for (std::uint32_t d = 3; d < 100000; d = d * 3 / 2 + 1) {
    const double bound = std::sqrt(d / (10.0 * std::log2(d)));
    const std::uint32_t p = max_tau_exponent(d);
    if (bound < 1.0) {
      EXPECT_EQ(p, 0u);
    } else {
      EXPECT_LE(std::ldexp(1.0, p), bound);
      EXPECT_GT(std::ldexp(1.0, p + 1), bound);
    }
  }
}

TEST(Tau, SamplesEachPowerUniformly) {
  SplitMix64 rng(4);
  std::vector<int> counts(3, 0);
  for (int k = 0; k < 30000; ++k) {
    const std::uint32_t tau = sample_tau(4096, rng);
    ASSERT_TRUE(tau == 1 || tau == 2 || tau == 4);
    ++counts[tau == 1 ? 0 : tau == 2 ? 1 : 2];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
  EXPECT_EQ(sample_tau(1, rng), 1u);
}

TEST(SingleTest, NeverRejectsMonotone) {
  for (auto [n, d] : {std::pair{4u, 2u}, std::pair{8u, 3u}, std::pair{2u, 6u}}) {
    const BoolFunc f = generate(Family::RandomMonotone, GridShape(n, d), {}, n + d);
    for (std::uint64_t k = 0; k < 5000; ++k) {
      SplitMix64 rng = trial_stream(1, 2, k);
      EXPECT_EQ(single_test(f, rng).verdict, Verdict::Accept);
    }
  }
}

TEST(SingleTest, TranscriptInvariants) {
  const BoolFunc f = generate(Family::UniformRandom, GridShape(8, 3), {}, 5);
  for (std::uint64_t k = 0; k < 2000; ++k) {
    SplitMix64 rng = trial_stream(1, 3, k);
    const std::uint64_t before = f.queries();
    const TestTranscript tr = single_test(f, rng);
    EXPECT_EQ(f.queries() - before, tr.queries_used);
    EXPECT_EQ(tr.matchings.size(), 3u);
    Point y = tr.x;
    for (std::uint32_t i : tr.T) {
      EXPECT_TRUE(std::binary_search(tr.S.begin(), tr.S.end(), i));
      y[i] += tr.matchings[i].step();
    }
    EXPECT_EQ(y, tr.y);
    EXPECT_EQ(tr.T.size(), tr.S.size() >= tr.tau ? tr.tau : 0u);
    EXPECT_EQ(tr.fx, f.eval(tr.x));
    EXPECT_EQ(tr.fy, f.eval(tr.y));
    EXPECT_EQ(tr.verdict == Verdict::Reject, tr.fx && !tr.fy);
  }
}

TEST(SingleTest, ConstantAccepts) {
  const BoolFunc one(GridShape(8, 2), [](std::span<const Coord>) { return true; });
  for (std::uint64_t k = 0; k < 1000; ++k) {
    SplitMix64 rng = trial_stream(7, 7, k);
    const TestTranscript tr = single_test(one, rng);
    EXPECT_EQ(tr.verdict, Verdict::Accept);
    EXPECT_EQ(tr.fx, tr.fy);
  }
}

TEST(SingleTest, LongWalkFallsBackToStart) {
  const BoolFunc f = generate(Family::UniformRandom, GridShape(4, 2), {}, 1);
  for (std::uint64_t k = 0; k < 200; ++k) {
    SplitMix64 rng = trial_stream(1, 9, k);
    const TestTranscript tr = single_test_fixed_tau(f, 3, rng);
    EXPECT_EQ(tr.y, tr.x);
    EXPECT_TRUE(tr.T.empty());
    EXPECT_EQ(tr.verdict, Verdict::Accept);
  }
}

TEST(RunWalk, ValidatesChosenDimensions) {
  const BoolFunc f = line_function({1, 1, 0, 0});
  const std::vector<MatchingId> lower{{0, 1, 0}};
  EXPECT_EQ(run_walk(f, 1, Point{0}, lower, {0}).verdict, Verdict::Reject);
  EXPECT_THROW(run_walk(f, 1, Point{2}, lower, {0}), DomainError);
  EXPECT_THROW(run_walk(f, 1, Point{0}, lower, {}), DomainError);
  EXPECT_THROW(run_walk(f, 1, Point{0}, {}, {}), DomainError);
}

TEST(ExactRejection, MatchesIndependentEnumeration) {
  const BoolFunc slab = generate(Family::AntiSlab, GridShape(8, 1), {}, 0);
  // Seven violated augmented edges out of 8 points x 6 matchings.
  EXPECT_EQ(tools::exact_rejection(slab).probability, Rational(7, 48));
  EXPECT_EQ(tau_one_rejection(slab), Rational(7, 48));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const BoolFunc f = generate(Family::UniformRandom, GridShape(4, 2), {}, seed);
    EXPECT_EQ(tools::exact_rejection(f).probability, tau_one_rejection(f)) << seed;
  }
}

TEST(DetectionRate, ConvergesToExactValue) {
  const BoolFunc f = line_function({1, 1, 0, 0});
  const double exact = to_double(tau_one_rejection(f));
  const RateEstimate est = detection_rate(f, 200000, 3, experiment_id("test/converge"));
  EXPECT_NEAR(est.rate, exact, 5 * std::sqrt(exact * (1 - exact) / 200000));
  EXPECT_LE(est.wilson_lo, exact);
  EXPECT_GE(est.wilson_hi, exact);
}

TEST(DetectionRate, ZeroForMonotoneAndConstant) {
  EXPECT_EQ(detection_rate(line_function({0, 0, 1, 1}), 10000, 1, 1).rejections, 0u);
  EXPECT_EQ(detection_rate(line_function({1, 1, 1, 1}), 10000, 1, 1).rejections, 0u);
}

TEST(DetectionRate, IndependentOfWorkerCount) {
  const BoolFunc f = generate(Family::NoisyMonotone, GridShape(8, 3), {}, 2);
  const RateEstimate a = detection_rate(f, 30000, 9, 4, 1);
  const RateEstimate b = detection_rate(f, 30000, 9, 4, 3);
  EXPECT_EQ(a.rejections, b.rejections);
}

TEST(EdgeTest, RejectsAtViolatedEdgeFraction) {
  const BoolFunc f = line_function({1, 1, 0, 0});
  constexpr int kTrials = 100000;
  int rejected = 0;
  for (int k = 0; k < kTrials; ++k) {
    SplitMix64 rng = trial_stream(5, 5, static_cast<std::uint64_t>(k));
    const TestTranscript tr = edge_test(f, rng);
    EXPECT_EQ(tr.tau, 1u);
    rejected += tr.verdict == Verdict::Reject;
  }
  EXPECT_NEAR(rejected / double(kTrials), 0.6, 5 * std::sqrt(0.24 / kTrials));
}

TEST(EdgeTest, SamplesEdgesUniformly) {
  const GridShape s(4, 2);
  std::map<std::pair<Index, Index>, int> counts;
  const BoolFunc f(s, BitTable(s.size()));
  for (int k = 0; k < 40000; ++k) {
    SplitMix64 rng = trial_stream(6, 6, static_cast<std::uint64_t>(k));
    const TestTranscript tr = edge_test(f, rng);
    ++counts[{linear_index(s, tr.x), linear_index(s, tr.y)}];
  }
  EXPECT_EQ(counts.size(), 40u);
  for (const auto& [e, c] : counts) EXPECT_NEAR(c, 1000, 160);
}

TEST(Repetitions, FormulaExample) {
  const double expected = std::pow(4.0, 5.0 / 6.0) * std::pow(2.0, 1.5) *
                          std::pow(5.0, 4.0 / 3.0) * std::pow(2.0, 4.0 / 3.0);
  EXPECT_EQ(repetition_count(8, 4, 0.5, 1.0), static_cast<std::uint64_t>(std::ceil(expected)));
  EXPECT_EQ(repetition_count(8, 4, 0.5, 1.0), 194u);
  EXPECT_THROW(repetition_count(8, 4, 0.0, 1.0), DomainError);
  EXPECT_THROW(repetition_count(8, 4, 0.5, -1.0), DomainError);
}

TEST(AmplifiedTest, MonotoneAlwaysAccepted) {
  const BoolFunc f = generate(Family::MonotoneThreshold, GridShape(8, 4), {}, 0);
  for (std::uint64_t k = 0; k < 20; ++k) {
    SplitMix64 rng = trial_stream(2, 2, k);
    const TesterVerdict v = amplified_test(f, 0.25, 1.0, rng);
    EXPECT_TRUE(v.accepted);
    EXPECT_EQ(v.invocations, repetition_count(8, 4, 0.25, 1.0));
  }
}

TEST(AmplifiedTest, CalibratedAntiSlabRejected) {
  const BoolFunc f = generate(Family::AntiSlab, GridShape(8, 2), {}, 0);
  int rejected = 0;
  for (std::uint64_t k = 0; k < 200; ++k) {
    SplitMix64 rng = trial_stream(3, 3, k);
    rejected += amplified_test(f, 0.5, tools::fixtures::kCalibration, rng).accepted ? 0 : 1;
  }
  EXPECT_GE(3 * rejected, 2 * 200);
}

TEST(Wilson, KnownValues) {
  const RateEstimate half = wilson(50, 100);
  EXPECT_NEAR(half.wilson_lo, 0.40383, 1e-4);
  EXPECT_NEAR(half.wilson_hi, 0.59617, 1e-4);
  EXPECT_EQ(wilson(0, 100).wilson_lo, 0.0);
  EXPECT_GT(wilson(0, 100).wilson_hi, 0.0);
  EXPECT_EQ(wilson(100, 100).wilson_hi, 1.0);
}

TEST(Persistence, ConstantAndOverlongWalks) {
  const BoolFunc one(GridShape(8, 3), [](std::span<const Coord>) { return true; });
  EXPECT_EQ(persistence_fraction(one, 1, 200, 50, 1, 1), 0.0);
  const BoolFunc f = generate(Family::UniformRandom, GridShape(8, 3), {}, 4);
  EXPECT_EQ(persistence_fraction(f, 4, 200, 50, 1, 1), 0.0);
  EXPECT_GT(persistence_fraction(f, 1, 200, 50, 1, 1), 0.0);
  EXPECT_EQ(persistence_fraction(f, 1, 300, 40, 8, 2, 1), persistence_fraction(f, 1, 300, 40, 8, 2, 4));
}

}  // namespace
}  // namespace hypermono
