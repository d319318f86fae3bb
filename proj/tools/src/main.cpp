#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "hypermono/crossing.hpp"
#include "hypermono/error.hpp"
#include "hypermono/fourier.hpp"
#include "hypermono/oracle.hpp"
#include "hypermono/poset.hpp"
#include "hypermono/reduce.hpp"
#include "hypermono/rng.hpp"
#include "hypermono/structure.hpp"
#include "hypermono/tester.hpp"
#include "hypermono/tools/experiments.hpp"
#include "hypermono/tools/fixtures.hpp"
#include "hypermono/tools/suite.hpp"

namespace {

using namespace hypermono;
using namespace hypermono::tools;

constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitIntegrity = 4;

struct Common {
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

// Function selection shared by the single-function subcommands.
struct Source {
  std::uint32_t n = 4;
  std::uint32_t d = 2;
  std::string family = "random_monotone";
  std::string input;
  std::vector<double> weights;
  double theta = std::numeric_limits<double>::quiet_NaN();
  std::uint32_t dim = 0;
  std::uint32_t seed_points = 3;
  double rho = 0.05;
  std::string base = "random_monotone";
  std::string backing = "auto";

  FamilyParams params() const {
    FamilyParams p;
    p.weights = weights;
    p.theta = theta;
    p.dim = dim;
    p.seed_points = seed_points;
    p.rho = rho;
    p.base = parse_family(base);
    if (backing == "auto") {
      p.backing = Backing::Auto;
    } else if (backing == "table") {
      p.backing = Backing::Table;
    } else if (backing == "predicate") {
      p.backing = Backing::Predicate;
    } else {
      throw DomainError("unknown backing '" + backing + "'");
    }
    return p;
  }

  BoolFunc load(std::uint64_t seed) const {
    if (!input.empty()) return load_file(input);
    return generate(parse_family(family), GridShape(n, d), params(), seed);
  }
};

void add_source(CLI::App* cmd, Source& s) {
  cmd->add_option("--n", s.n, "Side length")->capture_default_str();
  cmd->add_option("--d", s.d, "Dimension")->capture_default_str();
  cmd->add_option("--family", s.family, "Generator family")->capture_default_str();
  cmd->add_option("--input", s.input, "Function file (overrides --family)");
  cmd->add_option("--weights", s.weights, "Threshold weights (monotone_threshold)");
  cmd->add_option("--theta", s.theta, "Threshold (monotone_threshold)");
  cmd->add_option("--dim", s.dim, "Slab dimension (anti_slab)")->capture_default_str();
  cmd->add_option("--seed-points", s.seed_points, "Up-set generators (random_monotone)")
      ->capture_default_str();
  cmd->add_option("--rho", s.rho, "Flip probability (noisy_monotone)")->capture_default_str();
  cmd->add_option("--base", s.base, "Base family (noisy_monotone)")->capture_default_str();
  cmd->add_option("--backing", s.backing, "auto, table or predicate")->capture_default_str();
}

std::vector<Family> parse_families(const std::vector<std::string>& names) {
  std::vector<Family> out;
  for (const auto& n : names) out.push_back(parse_family(n));
  return out;
}

// CSV goes to --out when given, otherwise stdout; summaries go to whichever
// stream the CSV does not use.
struct Sink {
  std::ofstream file;
  std::ostream* csv = &std::cout;
  std::ostream* log = &std::cerr;

  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw DomainError("cannot write " + path);
    csv = &file;
    log = &std::cout;
  }
};

std::string opt_str(const std::optional<Rational>& q) { return q ? to_string(*q) : "none"; }

int run_test(const Common& c, const Source& src, double eps, double calibration) {
  const BoolFunc f = src.load(derive_seed(c.seed, experiment_id("cli/function"), 0));
  SplitMix64 rng = trial_stream(c.seed, experiment_id("cli/test"), 0);
  const TesterVerdict v = amplified_test(f, eps, calibration, rng);
  std::cout << (v.accepted ? "accept" : "reject") << " invocations=" << v.invocations
            << " queries=" << v.total_queries << '\n';
  return v.accepted ? 0 : 1;
}

int run_structure_function(const Common& c, const Source& src) {
  const BoolFunc f = src.load(derive_seed(c.seed, experiment_id("cli/function"), 0));
  const BitTable table = materialize(f, kOracleCapacity);
  const StructureReport rep = structure_report(f.shape(), table);
  std::cout << "gamma_count " << rep.gamma_count << '\n';
  std::cout << "ell,pairs,parts,good_parts,independent,partition,paths,paths_disjoint,"
               "paths_hit_violation,degree_monotone,layer_dichotomy,error\n";
  for (const auto& k : rep.classes) {
    std::cout << k.ell << ',' << k.pairs << ',' << k.parts << ',' << k.good_parts << ','
              << k.independent << ',' << k.partition << ',' << k.paths << ',' << k.paths_disjoint
              << ',' << k.paths_hit_violation << ',' << k.degree_monotone << ','
              << k.layer_dichotomy << ',' << k.error << '\n';
  }
  return rep.ok() ? 0 : kExitIntegrity;
}

// Pairs as "s:t" tokens separated by commas.
std::vector<std::pair<Index, Index>> parse_pairs(const std::string& text) {
  std::vector<std::pair<Index, Index>> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) throw DomainError("pair '" + tok + "' is not s:t");
    try {
      out.emplace_back(std::stoull(tok.substr(0, colon)), std::stoull(tok.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw DomainError("pair '" + tok + "' is not s:t");
    }
  }
  return out;
}

int run_structure_poset(const std::string& path, const std::string& pairs_text,
                        std::uint32_t ell) {
  const DagPoset poset = load_dag_file(path);
  const auto pairs = parse_pairs(pairs_text);
  const auto parts = conflict_free_decompose(poset, pairs, ell);
  std::cout << "parts " << parts.size() << '\n';
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const CoverGraph g = build_cover_graph(poset, parts[k]);
    const bool good = is_good(g);
    std::cout << "part " << k << " pairs=";
    for (std::size_t j = 0; j < parts[k].pairs().size(); ++j) {
      std::cout << (j ? "," : "") << parts[k].pairs()[j].first << ':' << parts[k].pairs()[j].second;
    }
    std::cout << " cover_vertices=" << g.vertices().size() << " good=" << good;
    if (good) std::cout << " paths=" << route_disjoint_paths(poset, parts[k]).size();
    std::cout << '\n';
  }
  return 0;
}

int run_fourier(const Common& c, const Source& src) {
  const BoolFunc f = src.load(derive_seed(c.seed, experiment_id("cli/function"), 0));
  const GridShape& shape = f.shape();
  shape.require_pow2("the Walsh basis");
  const BitTable table = materialize(f);
  const std::vector<double> pm = pm_table(table);
  const std::vector<double> spectrum = transform(shape, pm);
  double energy = 0.0;
  for (double v : spectrum) energy += v * v;
  std::cout << "parseval_error " << format_double(std::abs(energy - 1.0)) << '\n';
  bool agree = true;
  for (std::uint32_t i = 0; i < shape.d(); ++i) {
    for (std::uint32_t j = 0; j < shape.log_n(); ++j) {
      const EdgeCoefficient e = edge_coefficient(shape, table, i, j);
      std::cout << "edge_coefficient " << i << ' ' << j << ' ' << to_string(e.by_expectation)
                << ' ' << to_string(e.by_matching) << '\n';
      agree = agree && e.by_expectation == e.by_matching;
    }
  }
  bool ok = agree && std::abs(energy - 1.0) <= 1e-12;
  if (shape.n() >= 4 && shape.d() == 1) {
    const LineDeltaReport ld = line_delta_report(table);
    const SortComparison sc = sort_comparisons(table);
    std::cout << "line I_plus=" << to_string(ld.I_plus) << " I_minus=" << to_string(ld.I_minus)
              << " delta_I=" << to_string(ld.delta_I) << " e1=" << to_string(ld.e1_coeff)
              << " inequality=" << ld.inequality_holds << " monotone_claim="
              << ld.monotone_claim_holds << " sorted_delta_ge=" << sc.delta_sorted_ge
              << " final_claim=" << sc.final_claim_holds << '\n';
    ok = ok && ld.inequality_holds && ld.monotone_claim_holds && sc.delta_sorted_ge &&
         sc.final_claim_holds;
  }
  if (shape.n() >= 4 && shape.size() <= kOracleCapacity) {
    const InfluenceBound ib = influence_bound_check(shape, table);
    const AggregationCheck ag = aggregation_check(shape, table);
    std::cout << "influence I=" << to_string(ib.I) << " I_minus=" << to_string(ib.I_minus)
              << " applicable=" << ib.applicable << " holds=" << ib.holds << '\n';
    std::cout << "aggregation lhs=" << to_string(ag.lhs) << " rhs=" << to_string(ag.rhs)
              << " holds=" << ag.holds << '\n';
    ok = ok && (!ib.applicable || ib.holds) && ag.holds;
  }
  return ok ? 0 : kExitIntegrity;
}

int run_reduce(const Common& c, const Source& src) {
  const BoolFunc f = src.load(derive_seed(c.seed, experiment_id("cli/function"), 0));
  const ReductionPlan p = plan(f.shape().n(), f.shape().d());
  std::cout << "plan n=" << p.n << " d=" << p.d << " i=" << p.i << " N=" << p.N << " m=" << p.m
            << " blocks=";
  for (std::size_t k = 0; k < p.block_sizes.size(); ++k) {
    std::cout << (k ? "," : "") << p.block_sizes[k];
  }
  std::cout << '\n';
  const BoolFunc g = lift(p, f);
  const Rational eps = distance_to_monotonicity(f).eps;
  std::cout << "eps " << to_string(eps) << '\n';
  if (g.shape().size() <= kOracleCapacity) {
    const Rational lifted = distance_to_monotonicity(g).eps;
    std::cout << "lifted_eps " << to_string(lifted) << '\n';
    std::cout << "bound_holds " << (lifted * 6 >= eps) << '\n';
    return lifted * 6 >= eps ? 0 : kExitIntegrity;
  }
  std::cout << "lifted_eps skipped (" << g.shape().to_string() << " exceeds oracle capacity)\n";
  return 0;
}

int run_calibrate(const Common& c, const std::string& out_path) {
  Sink sink(out_path);
  const PilotResult pilot = calibration_pilot(c.seed, c.workers);
  *sink.csv << "n,d,family,eps,trials,rejections,wilson_lo,needed_reps,calibration\n";
  for (const auto& r : pilot.rows) {
    *sink.csv << r.n << ',' << r.d << ',' << r.family << ',' << r.eps << ',' << r.trials << ','
              << r.rejections << ',' << format_double(r.wilson_lo) << ',' << r.needed_reps << ','
              << format_double(r.calibration) << '\n';
  }
  *sink.log << "calibration " << format_double(pilot.calibration) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotonicity testing on hypergrids: tester, oracles and experiment sweeps"};
  app.require_subcommand(1);
  // Global options may also follow the subcommand.
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "TOML/INI file with one section per subcommand");

  Common common;
  app.add_option("--seed", common.seed, "Master seed")->capture_default_str();
  app.add_option("--workers", common.workers, "Worker threads")->capture_default_str();

  int code = 0;

  auto* test = app.add_subcommand("test", "Amplified tester on one function; exit 0 accept, 1 reject");
  Source test_src;
  double test_eps = 0.25;
  double test_cal = fixtures::kCalibration;
  add_source(test, test_src);
  test->add_option("--eps", test_eps, "Distance the repetitions are sized for")
      ->capture_default_str();
  test->add_option("--calibration", test_cal, "Repetition constant")->capture_default_str();
  test->callback([&] { code = run_test(common, test_src, test_eps, test_cal); });

  auto* rate = app.add_subcommand("rate", "Single-invocation detection rate sweep (CSV)");
  std::vector<std::uint32_t> rate_ns{4, 8};
  std::vector<std::uint32_t> rate_ds{2, 4};
  std::vector<std::string> rate_families{"anti_slab", "block_parity"};
  std::uint64_t rate_trials = 10000;
  std::string rate_out;
  rate->add_option("--n", rate_ns, "Side lengths")->capture_default_str();
  rate->add_option("--d", rate_ds, "Dimensions")->capture_default_str();
  rate->add_option("--family", rate_families, "Families")->capture_default_str();
  rate->add_option("--trials", rate_trials, "Trials per configuration")->capture_default_str();
  rate->add_option("--out", rate_out, "CSV path (default stdout)");
  rate->callback([&] {
    RateConfig cfg;
    cfg.ns = rate_ns;
    cfg.ds = rate_ds;
    cfg.families = parse_families(rate_families);
    cfg.trials = rate_trials;
    cfg.seed = common.seed;
    cfg.workers = common.workers;
    Sink sink(rate_out);
    write_rate_csv(cfg, *sink.csv);
  });

  auto* iso = app.add_subcommand("isoperimetry", "Influence and isoperimetric ratios (CSV)");
  IsoConfig iso_cfg;
  std::string iso_family = "uniform_random";
  std::string iso_out;
  bool iso_sampled = false;
  iso->add_option("--n", iso_cfg.n, "Side length")->capture_default_str();
  iso->add_option("--d", iso_cfg.d, "Dimension")->capture_default_str();
  iso->add_flag("--sampled", iso_sampled, "Sample functions of --family instead of all functions");
  iso->add_option("--samples", iso_cfg.samples, "Sampled functions")->capture_default_str();
  iso->add_option("--family", iso_family, "Family for --sampled")->capture_default_str();
  iso->add_option("--out", iso_out, "CSV path (default stdout)");
  iso->callback([&] {
    iso_cfg.exhaustive = !iso_sampled;
    iso_cfg.family = parse_family(iso_family);
    iso_cfg.seed = common.seed;
    iso_cfg.workers = common.workers;
    Sink sink(iso_out);
    const IsoSummary s = run_isoperimetry(iso_cfg, sink.csv);
    *sink.log << "functions " << s.functions << " far " << s.far << " nonpositive "
              << s.nonpositive << '\n'
              << "min_margulis " << opt_str(s.min_margulis) << '\n'
              << "min_edge " << opt_str(s.min_edge) << '\n'
              << "min_vertex " << opt_str(s.min_vertex) << '\n';
    if (s.nonpositive != 0) code = kExitIntegrity;
  });

  auto* pers = app.add_subcommand("persistence", "Non-persistent fraction by walk length (CSV)");
  PersistenceConfig pers_cfg;
  std::vector<std::string> pers_families{"random_monotone", "noisy_monotone"};
  std::string pers_out;
  pers->add_option("--n", pers_cfg.n, "Side length")->capture_default_str();
  pers->add_option("--d", pers_cfg.d, "Dimension")->capture_default_str();
  pers->add_option("--family", pers_families, "Families")->capture_default_str();
  pers->add_option("--tau", pers_cfg.taus, "Walk lengths (default all powers of 2 up to d)");
  pers->add_option("--outer", pers_cfg.outer, "Sampled start points")->capture_default_str();
  pers->add_option("--inner", pers_cfg.inner, "Walks per start point")->capture_default_str();
  pers->add_option("--out", pers_out, "CSV path (default stdout)");
  pers->callback([&] {
    pers_cfg.families = parse_families(pers_families);
    pers_cfg.seed = common.seed;
    pers_cfg.workers = common.workers;
    Sink sink(pers_out);
    write_persistence_csv(pers_cfg, *sink.csv);
  });

  auto* structure = app.add_subcommand("structure", "Decomposition and routing of M* by class");
  Source st_src;
  std::string st_poset;
  std::string st_pairs;
  std::uint32_t st_ell = 1;
  add_source(structure, st_src);
  structure->add_option("--poset", st_poset, "DAG fixture; decomposes --pairs instead");
  structure->add_option("--pairs", st_pairs, "Pairs s:t,s:t,... for --poset");
  structure->add_option("--ell", st_ell, "Pair distance for --poset")->capture_default_str();
  structure->callback([&] {
    code = st_poset.empty() ? run_structure_function(common, st_src)
                            : run_structure_poset(st_poset, st_pairs, st_ell);
  });

  auto* fourier = app.add_subcommand("fourier", "Walsh identities and line inequalities");
  Source fo_src;
  add_source(fourier, fo_src);
  fourier->callback([&] { code = run_fourier(common, fo_src); });

  auto* reduce = app.add_subcommand("reduce", "Lift to a power-of-two grid and compare distances");
  Source re_src;
  re_src.n = 3;
  add_source(reduce, re_src);
  reduce->callback([&] { code = run_reduce(common, re_src); });

  auto* verify = app.add_subcommand("verify", "Full property suite; exit 0 iff every check passes");
  std::vector<int> only;
  bool brief = false;
  std::string verify_out;
  verify->add_option("--only", only, "Criterion ids to run");
  verify->add_flag("--brief", brief, "Verdict lines only");
  verify->add_option("--out", verify_out, "Report path (default stdout)");
  verify->callback([&] {
    Sink sink(verify_out);
    const bool ok = run_suite({common.seed, common.workers}, only, *sink.csv, !brief);
    code = ok ? 0 : kExitIntegrity;
  });

  auto* calibrate = app.add_subcommand("calibrate", "Pilot sweep for the repetition constant");
  std::string cal_out;
  calibrate->add_option("--out", cal_out, "CSV path (default stdout)");
  calibrate->callback([&] { code = run_calibrate(common, cal_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity: " << e.what() << '\n';
    return kExitIntegrity;
  } catch (const NotGoodError& e) {
    std::cerr << "integrity: " << e.what() << '\n';
    return kExitIntegrity;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return code;
}
