#include "hypermono/tools/suite.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include "hypermono/crossing.hpp"
#include "hypermono/error.hpp"
#include "hypermono/fourier.hpp"
#include "hypermono/oracle.hpp"
#include "hypermono/parallel.hpp"
#include "hypermono/reduce.hpp"
#include "hypermono/rng.hpp"
#include "hypermono/tester.hpp"
#include "hypermono/tools/experiments.hpp"
#include "hypermono/tools/fixtures.hpp"

namespace hypermono::tools {

namespace {

// Pass/fail counts of a sweep, with the smallest failing item for replay.
struct Tally {
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::optional<std::uint64_t> first;

  void fail(std::uint64_t k) {
    ++failed;
    if (!first || k < *first) first = k;
  }
  void merge(const Tally& o) {
    checked += o.checked;
    failed += o.failed;
    if (o.first && (!first || *o.first < *first)) first = o.first;
  }
  bool ok() const { return failed == 0; }
};

template <class Body>
Tally sweep(std::uint64_t count, unsigned workers, Body&& body) {
  const unsigned w = std::max(1u, workers);
  std::vector<Tally> parts(w);
  parallel_chunks(count, w, [&](std::uint64_t begin, std::uint64_t end, unsigned chunk) {
    Tally& t = parts[chunk];
    for (std::uint64_t k = begin; k < end; ++k) body(k, t);
  });
  Tally total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

std::string shape_name(std::uint32_t n, std::uint32_t d) {
  return "n=" + std::to_string(n) + " d=" + std::to_string(d);
}

std::string tally_line(const std::string& what, const Tally& t) {
  std::ostringstream s;
  s << what << ": " << t.checked << " checked, " << t.failed << " failed";
  if (t.first) s << " (first at #" << *t.first << ")";
  return s.str();
}

BitTable mask_table(std::uint64_t mask, Index size) { return BitTable::from_mask(mask, size); }

std::uint64_t function_seed(std::uint64_t seed, const char* label) {
  return derive_seed(seed, experiment_id(label), 0);
}

struct Shape2 {
  std::uint32_t n;
  std::uint32_t d;
};

}  // namespace

CriterionResult one_sided_error(const SuiteOptions& opt) {
  CriterionResult r{1, "one-sided error", true, {}};
  constexpr std::uint64_t kTrials = 100000;
  std::uint64_t configs = 0;
  std::uint64_t calls = 0;
  std::uint64_t rejections = 0;
  for (Family family : {Family::MonotoneThreshold, Family::RandomMonotone}) {
    for (std::uint32_t n : {2u, 4u, 8u}) {
      for (std::uint32_t d = 1; d <= 6; ++d) {
        const GridShape shape(n, d);
        const BoolFunc f = generate(family, shape, {}, function_seed(opt.seed, "suite/one-sided"));
        if (!is_monotone(f)) {
          r.passed = false;
          r.details.push_back(to_string(family) + " " + shape_name(n, d) + " is not monotone");
        }
        const std::string label = "suite/one-sided/" + to_string(family) + "/" + shape_name(n, d);
        const RateEstimate est =
            detection_rate(f, kTrials, opt.seed, experiment_id(label.c_str()), opt.workers);
        ++configs;
        calls += est.trials;
        rejections += est.rejections;
        if (est.rejections != 0) {
          r.passed = false;
          r.details.push_back(label + ": " + std::to_string(est.rejections) + " rejections");
        }
      }
    }
  }
  r.details.push_back(std::to_string(configs) + " monotone configurations, " +
                      std::to_string(calls) + " single tests, " + std::to_string(rejections) +
                      " rejections");

  for (std::uint32_t d : {1u, 2u}) {
    const GridShape shape(4, d);
    const MonotoneCatalog catalog(shape);
    std::uint64_t outcomes = 0;
    std::uint64_t rejecting = 0;
    for (std::uint32_t mask : catalog.tables()) {
      const ExactRejection er = exact_rejection(BoolFunc(shape, mask_table(mask, shape.size())));
      outcomes += er.outcomes;
      rejecting += er.rejecting_outcomes;
    }
    if (rejecting != 0) r.passed = false;
    r.details.push_back("exhaustive randomness " + shape_name(4, d) + ": " +
                        std::to_string(catalog.tables().size()) + " monotone functions, " +
                        std::to_string(outcomes) + " outcomes, " + std::to_string(rejecting) +
                        " rejecting");
  }
  // The enumerator must see rejections when they exist.
  const GridShape control_shape(4, 2);
  const ExactRejection control =
      exact_rejection(generate(Family::AntiSlab, control_shape, {}, opt.seed));
  if (control.rejecting_outcomes == 0) r.passed = false;
  r.details.push_back("control anti_slab " + shape_name(4, 2) + ": rejection probability " +
                      to_string(control.probability));
  return r;
}

CriterionResult distance_equivalence(const SuiteOptions& opt) {
  CriterionResult r{2, "distance oracle equals brute force", true, {}};
  for (const Shape2 s : {Shape2{2, 2}, Shape2{2, 3}, Shape2{3, 2}, Shape2{4, 2}}) {
    const GridShape shape(s.n, s.d);
    const MonotoneCatalog catalog(shape);
    const std::uint64_t count = std::uint64_t{1} << shape.size();
    const Tally t = sweep(count, opt.workers, [&](std::uint64_t mask, Tally& acc) {
      const BitTable table = mask_table(mask, shape.size());
      const DistanceResult res = distance_to_monotonicity(shape, table);
      validate_violation_matching(shape, table, res.witness);
      ++acc.checked;
      if (res.eps != catalog.distance(static_cast<std::uint32_t>(mask))) acc.fail(mask);
    });
    if (!t.ok()) r.passed = false;
    r.details.push_back(tally_line(shape_name(s.n, s.d), t));
  }
  return r;
}

CriterionResult isoperimetry_regression(const SuiteOptions& opt) {
  CriterionResult r{3, "isoperimetry positivity and frozen minima", true, {}};
  for (const auto& fx : fixtures::kIsoMinima) {
    IsoConfig cfg;
    cfg.n = fx.n;
    cfg.d = fx.d;
    cfg.exhaustive = true;
    cfg.workers = opt.workers;
    const IsoSummary s = run_isoperimetry(cfg, nullptr);
    const auto show = [](const std::optional<Rational>& q) { return q ? to_string(*q) : "none"; };
    const bool match = show(s.min_margulis) == fx.margulis && show(s.min_edge) == fx.edge &&
                       show(s.min_vertex) == fx.vertex;
    if (s.nonpositive != 0 || !match) r.passed = false;
    r.details.push_back(shape_name(fx.n, fx.d) + ": " + std::to_string(s.far) + " far of " +
                        std::to_string(s.functions) + ", " + std::to_string(s.nonpositive) +
                        " nonpositive, minima " + show(s.min_margulis) + " " + show(s.min_edge) +
                        " " + show(s.min_vertex) + (match ? "" : " (fixture mismatch)"));
  }
  return r;
}

namespace {

const Shape2 kPipelineShapes[] = {{2, 1}, {2, 2}, {4, 1}, {4, 2}};

}  // namespace

CriterionResult routing_pipeline(const SuiteOptions& opt) {
  CriterionResult r{4, "decomposition and routing pipeline", true, {}};
  for (const Shape2 s : kPipelineShapes) {
    const GridShape shape(s.n, s.d);
    const std::uint64_t count = std::uint64_t{1} << shape.size();
    const Tally t = sweep(count, opt.workers, [&](std::uint64_t mask, Tally& acc) {
      const BitTable table = mask_table(mask, shape.size());
      if (is_monotone(shape, table)) return;
      ++acc.checked;
      const StructureReport rep = structure_report(shape, table);
      if (!rep.ok()) acc.fail(mask);
    });
    if (!t.ok()) r.passed = false;
    r.details.push_back(tally_line(shape_name(s.n, s.d) + " far functions", t));
  }
  return r;
}

CriterionResult crossing_counts(const SuiteOptions& opt) {
  CriterionResult r{5, "crossing pairs and alternating sequences", true, {}};
  for (const Shape2 s : kPipelineShapes) {
    const GridShape shape(s.n, s.d);
    const std::uint64_t count = std::uint64_t{1} << shape.size();
    const Tally t = sweep(count, opt.workers, [&](std::uint64_t mask, Tally& acc) {
      const BitTable table = mask_table(mask, shape.size());
      if (is_monotone(shape, table)) return;
      ++acc.checked;
      const OptimalMatching opt_m = optimal_matching(shape, table);
      bool ok = crossing_total(shape, opt_m.mstar) == opt_m.mstar.total_distance();
      for (const ViolationCount& vc : violation_counts(shape, table, opt_m.mstar)) {
        ok = ok && vc.holds();
      }
      if (!ok) acc.fail(mask);
    });
    if (!t.ok()) r.passed = false;
    r.details.push_back(tally_line(shape_name(s.n, s.d) + " far functions", t));
  }
  return r;
}

CriterionResult fourier_suite(const SuiteOptions& opt) {
  CriterionResult r{6, "Fourier identities and line inequalities", true, {}};
  {
    const GridShape shape(8, 3);
    constexpr std::uint64_t kTables = 1000;
    const Tally t = sweep(kTables, opt.workers, [&](std::uint64_t k, Tally& acc) {
      SplitMix64 rng = trial_stream(opt.seed, experiment_id("suite/parseval"), k);
      BitTable table(shape.size());
      for (Index x = 0; x < shape.size(); ++x) table.set(x, rng.coin());
      const std::vector<double> pm = pm_table(table);
      const std::vector<double> spectrum = transform(shape, pm);
      double energy = 0.0;
      for (double c : spectrum) energy += c * c;
      const std::vector<double> back = inverse_transform(shape, spectrum);
      double round_trip = 0.0;
      for (Index x = 0; x < shape.size(); ++x) {
        round_trip = std::max(round_trip, std::abs(back[x] - pm[x]));
      }
      ++acc.checked;
      if (std::abs(energy - 1.0) > 1e-12 || round_trip > 1e-12) acc.fail(k);
    });
    if (!t.ok()) r.passed = false;
    r.details.push_back(tally_line("Parseval and inverse on random tables " + shape_name(8, 3), t));
  }
  {
    const GridShape shape(8, 3);
    const Tally t = sweep(1000, opt.workers, [&](std::uint64_t k, Tally& acc) {
      SplitMix64 rng = trial_stream(opt.seed, experiment_id("suite/edge-coefficient"), k);
      BitTable table(shape.size());
      for (Index x = 0; x < shape.size(); ++x) table.set(x, rng.coin());
      const std::vector<std::int64_t> h = [&] {
        std::vector<std::int64_t> v(shape.size());
        for (Index x = 0; x < shape.size(); ++x) v[x] = table.get(x) ? 1 : 0;
        return hadamard(shape, std::move(v));
      }();
      bool ok = true;
      for (std::uint32_t i = 0; i < shape.d(); ++i) {
        for (std::uint32_t j = 0; j < shape.log_n(); ++j) {
          const EdgeCoefficient c = edge_coefficient(shape, table, i, j);
          const Rational by_fwht(h[position_of(shape, edge_index(shape, i, j))],
                                 static_cast<std::int64_t>(shape.size()));
          ok = ok && c.by_expectation == c.by_matching && c.by_expectation == by_fwht;
        }
      }
      ++acc.checked;
      if (!ok) acc.fail(k);
    });
    if (!t.ok()) r.passed = false;
    r.details.push_back(tally_line("edge coefficients by expectation, matching and transform", t));
  }
  for (std::uint32_t n : {8u, 16u}) {
    const std::uint64_t count = std::uint64_t{1} << n;
    const Tally t = sweep(count, opt.workers, [&](std::uint64_t mask, Tally& acc) {
      const BitTable line = mask_table(mask, n);
      const LineDeltaReport ld = line_delta_report(line);
      const SortComparison sc = sort_comparisons(line);
      ++acc.checked;
      if (!ld.inequality_holds || !ld.monotone_claim_holds || !sc.delta_sorted_ge ||
          !sc.final_claim_holds) {
        acc.fail(mask);
      }
    });
    if (!t.ok()) r.passed = false;
    r.details.push_back(tally_line("line inequalities and sorting claims n=" + std::to_string(n), t));
  }
  {
    const GridShape shape(4, 2);
    const Tally t = sweep(std::uint64_t{1} << shape.size(), opt.workers,
                          [&](std::uint64_t mask, Tally& acc) {
                            const BitTable table = mask_table(mask, shape.size());
                            const InfluenceBound ib = influence_bound_check(shape, table);
                            const AggregationCheck ag = aggregation_check(shape, table);
                            ++acc.checked;
                            if ((ib.applicable && !ib.holds) || !ag.holds) acc.fail(mask);
                          });
    if (!t.ok()) r.passed = false;
    r.details.push_back(tally_line("influence bound and aggregation " + shape_name(4, 2), t));
  }
  return r;
}

CriterionResult reduction(const SuiteOptions& opt) {
  CriterionResult r{7, "reduction to power-of-two grids", true, {}};
  for (const Shape2 s : {Shape2{2, 1}, Shape2{2, 2}, Shape2{3, 1}, Shape2{3, 2}, Shape2{5, 1}}) {
    const GridShape shape(s.n, s.d);
    const ReductionPlan p = plan(s.n, s.d);
    const MonotoneCatalog catalog(shape);
    Tally mono;
    for (std::uint32_t mask : catalog.tables()) {
      ++mono.checked;
      if (!is_monotone(lift(p, BoolFunc(shape, mask_table(mask, shape.size()))))) mono.fail(mask);
    }
    // Every function of these shapes; at most 2^9.
    const std::uint64_t count = std::uint64_t{1} << shape.size();
    const Tally dist = sweep(count, opt.workers, [&](std::uint64_t mask, Tally& acc) {
      const BoolFunc f(shape, mask_table(mask, shape.size()));
      const Rational eps = distance_to_monotonicity(f).eps;
      const Rational lifted = distance_to_monotonicity(lift(p, f)).eps;
      ++acc.checked;
      if (lifted * 6 < eps) acc.fail(mask);
    });
    if (!mono.ok() || !dist.ok()) r.passed = false;
    r.details.push_back(tally_line(shape_name(s.n, s.d) + " -> N=" + std::to_string(p.N) +
                                       " monotone preservation",
                                   mono));
    r.details.push_back(tally_line(shape_name(s.n, s.d) + " distance ratio", dist));
  }
  {
    const GridShape shape(3, 2);
    BoolFunc f = generate(Family::UniformRandom, shape, {}, opt.seed);
    const BoolFunc g = lift(plan(3, 2), f);
    f.reset_queries();
    const std::uint64_t before = g.queries();
    std::uint64_t evaluated = 0;
    for (Index x = 0; x < g.shape().size(); x += 3) {
      (void)g.eval_index(x);
      ++evaluated;
    }
    const bool forwarded = f.queries() == evaluated && g.queries() - before == evaluated;
    if (!forwarded) r.passed = false;
    r.details.push_back("query forwarding: " + std::to_string(evaluated) + " lifted queries, " +
                        std::to_string(f.queries()) + " base queries");
  }
  return r;
}

PilotResult calibration_pilot(std::uint64_t seed, unsigned workers) {
  constexpr std::uint64_t kTrials = 20000;
  PilotResult out;
  for (Family family : {Family::AntiSlab, Family::BlockParity}) {
    for (std::uint32_t n : {4u, 8u}) {
      for (std::uint32_t d : {2u, 4u, 8u}) {
        const GridShape shape(n, d);
        const std::uint64_t fseed = function_seed(seed, "suite/detection/function");
        const BoolFunc f = generate(family, shape, {}, fseed);
        const Rational eps = family_distance(family, shape, {}, fseed);
        const std::string label = "pilot/" + to_string(family) + "/" + shape_name(n, d);
        const RateEstimate est =
            detection_rate(f, kTrials, seed, experiment_id(label.c_str()), workers);
        if (!(est.wilson_lo > 0.0)) {
          throw IntegrityError("pilot detection rate has a zero lower bound at " + label);
        }
        PilotRow row;
        row.n = n;
        row.d = d;
        row.family = to_string(family);
        row.eps = to_string(eps);
        row.trials = est.trials;
        row.rejections = est.rejections;
        row.wilson_lo = est.wilson_lo;
        row.needed_reps =
            est.wilson_lo >= 1.0
                ? 1
                : static_cast<std::uint64_t>(std::ceil(std::log(0.05) / std::log1p(-est.wilson_lo)));
        row.calibration =
            static_cast<double>(row.needed_reps) / repetition_scale(n, d, to_double(eps));
        out.calibration = std::max(out.calibration, row.calibration);
        out.rows.push_back(row);
      }
    }
  }
  // Round up to three significant digits so the constant has a short literal.
  const int e = static_cast<int>(std::floor(std::log10(out.calibration)));
  if (e >= 2) {
    const double unit = std::pow(10.0, e - 2);
    out.calibration = std::ceil(out.calibration / unit) * unit;
  } else {
    const double scale = std::pow(10.0, 2 - e);
    out.calibration = std::ceil(out.calibration * scale) / scale;
  }
  return out;
}

CriterionResult calibrated_detection(const SuiteOptions& opt) {
  CriterionResult r{8, "calibrated detection", true, {}};
  const PilotResult pilot = calibration_pilot(fixtures::kSeed, opt.workers);
  const bool frozen = pilot.calibration == fixtures::kCalibration;
  if (!frozen) r.passed = false;
  r.details.push_back("pilot calibration " + format_double(pilot.calibration) + ", frozen " +
                      format_double(fixtures::kCalibration));

  constexpr std::uint64_t kRuns = 200;
  const double cal = fixtures::kCalibration > 0.0 ? fixtures::kCalibration : pilot.calibration;
  for (Family family : {Family::AntiSlab, Family::BlockParity}) {
    for (std::uint32_t n : {4u, 8u}) {
      for (std::uint32_t d : {2u, 4u, 8u}) {
        const GridShape shape(n, d);
        const std::uint64_t fseed = function_seed(opt.seed, "suite/detection/function");
        const BoolFunc f = generate(family, shape, {}, fseed);
        const double eps = to_double(family_distance(family, shape, {}, fseed));
        const std::string label = "suite/amplified/" + to_string(family) + "/" + shape_name(n, d);
        const unsigned w = std::max(1u, opt.workers);
        std::vector<std::uint64_t> rejected(w, 0);
        parallel_chunks(kRuns, w, [&](std::uint64_t begin, std::uint64_t end, unsigned chunk) {
          for (std::uint64_t k = begin; k < end; ++k) {
            SplitMix64 rng = trial_stream(opt.seed, experiment_id(label.c_str()), k);
            if (!amplified_test(f, eps, cal, rng).accepted) ++rejected[chunk];
          }
        });
        std::uint64_t total = 0;
        for (auto c : rejected) total += c;
        const bool ok = 3 * total >= 2 * kRuns;
        if (!ok) r.passed = false;
        r.details.push_back(to_string(family) + " " + shape_name(n, d) + " eps=" +
                            format_double(eps) + " reps=" +
                            std::to_string(repetition_count(n, d, eps, cal)) + ": " +
                            std::to_string(total) + "/" + std::to_string(kRuns) + " rejected");
      }
    }
  }

  constexpr std::uint64_t kTrials = 20000;
  for (Family family :
       {Family::AntiSlab, Family::BlockParity, Family::UniformRandom, Family::NoisyMonotone}) {
    for (std::uint32_t n : {4u, 8u}) {
      std::ostringstream trend;
      trend << "single-run rate " << to_string(family) << " n=" << n << " by d:";
      for (std::uint32_t d : {2u, 4u, 8u}) {
        const GridShape shape(n, d);
        const std::uint64_t fseed = function_seed(opt.seed, "suite/detection/function");
        Rational eps;
        try {
          eps = family_distance(family, shape, {}, fseed);
        } catch (const CapacityError&) {
          trend << " d=" << d << " (distance unknown)";
          continue;
        }
        if (eps == Rational(0)) {
          trend << " d=" << d << " (monotone sample)";
          continue;
        }
        const BoolFunc f = generate(family, shape, {}, fseed);
        const std::string label = "suite/rate/" + to_string(family) + "/" + shape_name(n, d);
        const RateEstimate est =
            detection_rate(f, kTrials, opt.seed, experiment_id(label.c_str()), opt.workers);
        if (!(est.wilson_lo > 0.0)) r.passed = false;
        trend << " d=" << d << " " << format_double(est.rate) << " [lo "
              << format_double(est.wilson_lo) << "]";
      }
      r.details.push_back(trend.str());
    }
  }
  return r;
}

CriterionResult determinism(const SuiteOptions& opt) {
  CriterionResult r{9, "determinism across runs and worker counts", true, {}};
  const unsigned other = std::max(3u, opt.workers + 1);
  const auto check = [&](const std::string& what, const std::function<std::string(unsigned)>& run) {
    const std::string a = run(1);
    const std::string b = run(1);
    const std::string c = run(other);
    const bool same = a == b && a == c;
    if (!same) r.passed = false;
    r.details.push_back(what + ": " + std::to_string(a.size()) + " bytes, " +
                        (same ? "identical" : "DIFFERENT") + " for workers 1, 1, " +
                        std::to_string(other));
  };
  check("rate sweep", [&](unsigned w) {
    RateConfig cfg;
    cfg.ns = {4, 8};
    cfg.ds = {2, 4};
    cfg.families = {Family::AntiSlab, Family::BlockParity, Family::NoisyMonotone,
                    Family::MonotoneThreshold};
    cfg.trials = 3000;
    cfg.seed = opt.seed;
    cfg.workers = w;
    std::ostringstream s;
    write_rate_csv(cfg, s);
    return s.str();
  });
  check("isoperimetry sweep exhaustive n=2 d=3", [&](unsigned w) {
    IsoConfig cfg;
    cfg.n = 2;
    cfg.d = 3;
    cfg.seed = opt.seed;
    cfg.workers = w;
    std::ostringstream s;
    run_isoperimetry(cfg, &s);
    return s.str();
  });
  check("isoperimetry sweep sampled n=4 d=3", [&](unsigned w) {
    IsoConfig cfg;
    cfg.n = 4;
    cfg.d = 3;
    cfg.exhaustive = false;
    cfg.samples = 200;
    cfg.family = Family::NoisyMonotone;
    cfg.seed = opt.seed;
    cfg.workers = w;
    std::ostringstream s;
    run_isoperimetry(cfg, &s);
    return s.str();
  });
  check("persistence sweep", [&](unsigned w) {
    PersistenceConfig cfg;
    cfg.n = 8;
    cfg.d = 4;
    cfg.families = {Family::RandomMonotone, Family::NoisyMonotone};
    cfg.outer = 200;
    cfg.inner = 50;
    cfg.seed = opt.seed;
    cfg.workers = w;
    std::ostringstream s;
    write_persistence_csv(cfg, s);
    return s.str();
  });
  check("reduction report", [&](unsigned w) {
    SuiteOptions o = opt;
    o.workers = w;
    std::ostringstream s;
    print_result(reduction(o), s, true);
    return s.str();
  });
  return r;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "one-sided error", one_sided_error},
      {2, "distance oracle equals brute force", distance_equivalence},
      {3, "isoperimetry positivity and frozen minima", isoperimetry_regression},
      {4, "decomposition and routing pipeline", routing_pipeline},
      {5, "crossing pairs and alternating sequences", crossing_counts},
      {6, "Fourier identities and line inequalities", fourier_suite},
      {7, "reduction to power-of-two grids", reduction},
      {8, "calibrated detection", calibrated_detection},
      {9, "determinism across runs and worker counts", determinism},
  };
  return all;
}

void print_result(const CriterionResult& r, std::ostream& out, bool details) {
  out << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << '\n';
  if (!details) return;
  for (const auto& line : r.details) out << "    " << line << '\n';
}

bool run_suite(const SuiteOptions& opt, const std::vector<int>& only, std::ostream& out,
               bool details) {
  bool all = true;
  for (const Criterion& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    CriterionResult res;
    try {
      res = c.run(opt);
    } catch (const Error& e) {
      res = CriterionResult{c.id, c.title, false, {std::string("error: ") + e.what()}};
    }
    all = all && res.passed;
    print_result(res, out, details);
    out.flush();
  }
  return all;
}

}  // namespace hypermono::tools
