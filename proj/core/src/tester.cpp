#include "hypermono/tester.hpp"

#include <algorithm>
#include <cmath>

#include "hypermono/error.hpp"
#include "hypermono/parallel.hpp"

namespace hypermono {

std::uint32_t max_tau_exponent(std::uint32_t d) {
  if (d <= 2) return 0;
  const double bound_sq = static_cast<double>(d) / (10.0 * std::log2(static_cast<double>(d)));
  if (bound_sq < 1.0) return 0;
  // 2^p <= sqrt(B)  <=>  4^p <= B
  std::uint32_t p = 0;
  while (std::ldexp(1.0, 2 * static_cast<int>(p + 1)) <= bound_sq) ++p;
  return p;
}

std::uint32_t sample_tau(std::uint32_t d, SplitMix64& rng) {
  const std::uint32_t p = max_tau_exponent(d);
  return std::uint32_t{1} << rng.below(p + 1);
}

std::vector<std::uint32_t> lower_dimensions(const GridShape& shape, const Point& x,
                                            std::span<const MatchingId> matchings) {
  std::vector<std::uint32_t> S;
  for (std::uint32_t i = 0; i < matchings.size(); ++i) {
    const MatchingId& m = matchings[i];
    if (coord_side(shape.n(), x[m.dim], m.exp, m.parity) == Side::Lower) S.push_back(i);
  }
  return S;
}

TestTranscript run_walk(const BoolFunc& f, std::uint32_t tau, const Point& x,
                        std::vector<MatchingId> matchings, std::vector<std::uint32_t> T) {
  const GridShape& shape = f.shape();
  if (matchings.size() != shape.d()) throw DomainError("run_walk: one matching per dimension");
  TestTranscript tr;
  tr.tau = tau;
  tr.x = x;
  tr.S = lower_dimensions(shape, x, matchings);
  tr.matchings = std::move(matchings);
  if (tr.S.size() < tau) {
    if (!T.empty()) throw DomainError("run_walk: T must be empty when |S| < tau");
  } else {
    if (T.size() != tau) throw DomainError("run_walk: |T| must equal tau");
    for (std::uint32_t i : T) {
      if (!std::binary_search(tr.S.begin(), tr.S.end(), i)) {
        throw DomainError("run_walk: T is not a subset of S");
      }
    }
  }
  tr.T = std::move(T);
  tr.y = x;
  for (std::uint32_t i : tr.T) tr.y[i] += tr.matchings[i].step();

  tr.fx = f.eval(tr.x);
  tr.queries_used = 1;
  if (tr.T.empty()) {
    tr.fy = tr.fx;
  } else {
    tr.fy = f.eval(tr.y);
    tr.queries_used = 2;
  }
  tr.verdict = tr.fx && !tr.fy ? Verdict::Reject : Verdict::Accept;
  return tr;
}

namespace {

Point random_point(const GridShape& shape, SplitMix64& rng) {
  Point x;
  x.coords.resize(shape.d());
  for (auto& c : x.coords) c = static_cast<Coord>(rng.below(shape.n()));
  return x;
}

TestTranscript walk_from_rng(const BoolFunc& f, std::uint32_t tau, SplitMix64& rng) {
  const GridShape& shape = f.shape();
  shape.require_pow2("the tester");
  const Point x = random_point(shape, rng);
  const std::uint32_t log_n = shape.log_n();
  std::vector<MatchingId> matchings(shape.d());
  for (std::uint32_t i = 0; i < shape.d(); ++i) {
    matchings[i].dim = i;
    // n = 1 has no matchings; exp 0 with parity 1 is then unmatched everywhere.
    matchings[i].exp = log_n == 0 ? 0 : static_cast<std::uint32_t>(rng.below(log_n));
    matchings[i].parity = rng.coin() ? 1 : 0;
  }
  const auto S = lower_dimensions(shape, x, matchings);
  std::vector<std::uint32_t> T;
  if (S.size() >= tau) {
    for (std::uint32_t k : sample_subset(static_cast<std::uint32_t>(S.size()), tau, rng)) {
      T.push_back(S[k]);
    }
  }
  return run_walk(f, tau, x, std::move(matchings), std::move(T));
}

}  // namespace

TestTranscript single_test(const BoolFunc& f, SplitMix64& rng) {
  const std::uint32_t tau = sample_tau(f.shape().d(), rng);
  return walk_from_rng(f, tau, rng);
}

TestTranscript single_test_fixed_tau(const BoolFunc& f, std::uint32_t tau, SplitMix64& rng) {
  if (tau == 0) throw DomainError("tau must be positive");
  return walk_from_rng(f, tau, rng);
}

TestTranscript edge_test(const BoolFunc& f, SplitMix64& rng) {
  const GridShape& shape = f.shape();
  shape.require_pow2("the edge tester");
  const Index total = augmented_edge_count(shape);
  if (total == 0) throw DomainError("the grid " + shape.to_string() + " has no edges");
  const std::uint32_t n = shape.n();
  const Index per_dim = total / shape.d();
  Index k = rng.below(total);
  const auto dim = static_cast<std::uint32_t>(k / per_dim);
  k %= per_dim;
  // Within a dimension: exponent a owns (n - 2^a) * n^(d-1) edges.
  const Index rest = per_dim / [&] {
    Index w = 0;
    for (std::uint32_t a = 0; a < shape.log_n(); ++a) w += n - (Index{1} << a);
    return w;
  }();
  std::uint32_t exp = 0;
  while (k >= (n - (Index{1} << exp)) * rest) {
    k -= (n - (Index{1} << exp)) * rest;
    ++exp;
  }
  const Index span_len = n - (Index{1} << exp);
  Point x;
  x.coords.resize(shape.d());
  x[dim] = static_cast<Coord>(k % span_len);
  k /= span_len;
  for (std::uint32_t i = 0; i < shape.d(); ++i) {
    if (i == dim) continue;
    x[i] = static_cast<Coord>(k % n);
    k /= n;
  }
  TestTranscript tr;
  tr.tau = 1;
  tr.x = x;
  const std::uint32_t parity = (x[dim] >> exp) & 1u;
  tr.matchings = {MatchingId{dim, exp, parity}};
  tr.S = {dim};
  tr.T = {dim};
  tr.y = x;
  tr.y[dim] += Coord{1} << exp;
  tr.fx = f.eval(tr.x);
  tr.fy = f.eval(tr.y);
  tr.queries_used = 2;
  tr.verdict = tr.fx && !tr.fy ? Verdict::Reject : Verdict::Accept;
  return tr;
}

double repetition_scale(std::uint32_t n, std::uint32_t d, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
  const double ld = std::max(1.0, std::log2(static_cast<double>(d)));
  const double ln = std::max(1.0, std::log2(static_cast<double>(n)));
  return std::pow(static_cast<double>(d), 5.0 / 6.0) * std::pow(ld, 1.5) *
         std::pow(ln + ld, 4.0 / 3.0) * std::pow(eps, -4.0 / 3.0);
}

std::uint64_t repetition_count(std::uint32_t n, std::uint32_t d, double eps, double calibration) {
  if (!(calibration > 0.0) || !std::isfinite(calibration)) {
    throw DomainError("calibration must be positive");
  }
  return static_cast<std::uint64_t>(std::ceil(calibration * repetition_scale(n, d, eps)));
}

TesterVerdict amplified_test(const BoolFunc& f, double eps, double calibration, SplitMix64& rng) {
  const std::uint64_t reps = repetition_count(f.shape().n(), f.shape().d(), eps, calibration);
  TesterVerdict v;
  for (std::uint64_t k = 0; k < reps; ++k) {
    const TestTranscript tr = single_test(f, rng);
    ++v.invocations;
    v.total_queries += tr.queries_used;
    if (tr.verdict == Verdict::Reject) {
      v.accepted = false;
      break;
    }
  }
  return v;
}

RateEstimate wilson(std::uint64_t successes, std::uint64_t trials) {
  constexpr double z = 1.959963984540054;
  RateEstimate e;
  e.trials = trials;
  e.rejections = successes;
  if (trials == 0) {
    e.wilson_hi = 1.0;
    return e;
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  e.rate = p;
  e.wilson_lo = successes == 0 ? 0.0 : std::clamp(center - half, 0.0, 1.0);
  e.wilson_hi = successes == trials ? 1.0 : std::clamp(center + half, 0.0, 1.0);
  return e;
}

RateEstimate detection_rate(const BoolFunc& f, std::uint64_t trials, std::uint64_t master_seed,
                            std::uint64_t experiment, unsigned workers) {
  if (trials == 0) throw DomainError("trials must be positive");
  std::vector<std::uint64_t> rejections(std::max(1u, workers), 0);
  parallel_chunks(trials, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned chunk) {
    std::uint64_t local = 0;
    for (std::uint64_t k = begin; k < end; ++k) {
      SplitMix64 rng = trial_stream(master_seed, experiment, k);
      if (single_test(f, rng).verdict == Verdict::Reject) ++local;
    }
    rejections[chunk] = local;
  });
  std::uint64_t total = 0;
  for (auto r : rejections) total += r;
  return wilson(total, trials);
}

double persistence_fraction(const BoolFunc& f, std::uint32_t tau, std::uint64_t outer_samples,
                            std::uint64_t inner_samples, std::uint64_t master_seed,
                            std::uint64_t experiment, unsigned workers) {
  if (tau == 0) throw DomainError("tau must be positive");
  if (outer_samples == 0 || inner_samples == 0) throw DomainError("sample counts must be positive");
  const GridShape& shape = f.shape();
  shape.require_pow2("persistence estimation");
  std::vector<std::uint64_t> flagged(std::max(1u, workers), 0);
  parallel_chunks(outer_samples, workers, [&](std::uint64_t begin, std::uint64_t end,
                                              unsigned chunk) {
    std::uint64_t local = 0;
    for (std::uint64_t k = begin; k < end; ++k) {
      SplitMix64 rng = trial_stream(master_seed, experiment, k);
      const Point x = random_point(shape, rng);
      const bool fx = f.eval(x);
      const std::uint32_t log_n = shape.log_n();
      std::uint64_t changed = 0;
      std::vector<MatchingId> matchings(shape.d());
      for (std::uint64_t s = 0; s < inner_samples; ++s) {
        for (std::uint32_t i = 0; i < shape.d(); ++i) {
          matchings[i] = {i, log_n == 0 ? 0 : static_cast<std::uint32_t>(rng.below(log_n)),
                          rng.coin() ? 1u : 0u};
        }
        const auto S = lower_dimensions(shape, x, matchings);
        if (S.size() < tau) continue;
        Point y = x;
        for (std::uint32_t j : sample_subset(static_cast<std::uint32_t>(S.size()), tau, rng)) {
          y[S[j]] += matchings[S[j]].step();
        }
        if (f.eval(y) != fx) ++changed;
      }
      // Non-persistent: estimated Pr[f(x) != f(y)] > 1/10.
      if (10 * changed > inner_samples) ++local;
    }
    flagged[chunk] = local;
  });
  std::uint64_t total = 0;
  for (auto v : flagged) total += v;
  return static_cast<double>(total) / static_cast<double>(outer_samples);
}

}  // namespace hypermono
