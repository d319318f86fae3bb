#include "hypermono/tools/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>

#include "hypermono/error.hpp"
#include "hypermono/parallel.hpp"
#include "hypermono/rng.hpp"
#include "hypermono/structure.hpp"
#include "hypermono/tester.hpp"

namespace hypermono::tools {

std::string format_double(double v) {
  if (!std::isfinite(v)) throw IntegrityError("non-finite value in a report");
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_rational(const Rational& q) { return format_double(to_double(q)); }

Rational family_distance(Family family, const GridShape& shape, const FamilyParams& params,
                         std::uint64_t seed) {
  if (is_monotone_family(family)) return Rational(0);
  if (shape.size() <= kOracleCapacity) {
    const BoolFunc f = generate(family, shape, params, seed);
    return distance_to_monotonicity(f).eps;
  }
  if (family == Family::AntiSlab) return Rational(1, 2);
  if (family == Family::BlockParity) {
    const GridShape base(2, shape.d());
    if (base.size() <= kOracleCapacity) {
      return distance_to_monotonicity(generate(family, base, params, seed)).eps;
    }
  }
  throw CapacityError("no exact distance for " + to_string(family) + " over " + shape.to_string());
}

void write_rate_csv(const RateConfig& cfg, std::ostream& out) {
  out << kRateHeader << '\n';
  for (std::uint32_t n : cfg.ns) {
    for (std::uint32_t d : cfg.ds) {
      const GridShape shape(n, d);
      for (Family family : cfg.families) {
        const std::uint64_t fseed = derive_seed(cfg.seed, experiment_id("rate/function"), 0);
        const BoolFunc f = generate(family, shape, cfg.params, fseed);
        const Rational eps = family_distance(family, shape, cfg.params, fseed);
        const std::string label =
            "rate/" + std::to_string(n) + "/" + std::to_string(d) + "/" + to_string(family);
        const RateEstimate r =
            detection_rate(f, cfg.trials, cfg.seed, experiment_id(label.c_str()), cfg.workers);
        out << n << ',' << d << ',' << to_string(family) << ',' << format_rational(eps) << ','
            << r.trials << ',' << r.rejections << ',' << format_double(r.rate) << ','
            << format_double(r.wilson_lo) << ',' << format_double(r.wilson_hi) << '\n';
      }
    }
  }
}

namespace {

void keep_min(std::optional<Rational>& slot, const Rational& v) {
  if (!slot || v < *slot) slot = v;
}

void merge(IsoSummary& into, const IsoSummary& part) {
  into.functions += part.functions;
  into.far += part.far;
  into.nonpositive += part.nonpositive;
  if (part.min_margulis) keep_min(into.min_margulis, *part.min_margulis);
  if (part.min_edge) keep_min(into.min_edge, *part.min_edge);
  if (part.min_vertex) keep_min(into.min_vertex, *part.min_vertex);
}

}  // namespace

IsoSummary run_isoperimetry(const IsoConfig& cfg, std::ostream* out) {
  const GridShape shape(cfg.n, cfg.d);
  if (shape.size() > kOracleCapacity) {
    throw CapacityError("isoperimetry over " + shape.to_string() + " exceeds oracle capacity");
  }
  std::uint64_t count = cfg.samples;
  if (cfg.exhaustive) {
    if (shape.size() > 24) {
      throw CapacityError("exhaustive sweep over " + shape.to_string() + " needs 2^" +
                          std::to_string(shape.size()) + " functions");
    }
    count = std::uint64_t{1} << shape.size();
  }
  const unsigned workers = std::max(1u, cfg.workers);
  std::vector<IsoSummary> parts(workers);
  std::vector<std::string> rows(workers);
  parallel_chunks(count, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned chunk) {
    IsoSummary local;
    std::ostringstream buf;
    for (std::uint64_t k = begin; k < end; ++k) {
      BitTable table;
      if (cfg.exhaustive) {
        table = BitTable(shape.size());
        for (Index b = 0; b < shape.size(); ++b) table.set(b, (k >> b) & 1u);
      } else {
        const std::uint64_t s = derive_seed(cfg.seed, experiment_id("isoperimetry/sample"), k);
        table = materialize(generate(cfg.family, shape, cfg.params, s));
      }
      const InfluenceReport rep = isoperimetry_report(shape, table);
      ++local.functions;
      if (!rep.margulis) continue;
      ++local.far;
      if (*rep.margulis <= 0 || *rep.edge_ratio <= 0 || *rep.vertex_ratio <= 0) ++local.nonpositive;
      keep_min(local.min_margulis, *rep.margulis);
      keep_min(local.min_edge, *rep.edge_ratio);
      keep_min(local.min_vertex, *rep.vertex_ratio);
      if (out != nullptr) {
        buf << cfg.n << ',' << cfg.d << ',' << k << ',' << format_rational(rep.eps) << ','
            << format_rational(rep.I) << ',' << format_rational(rep.I_minus) << ','
            << format_rational(rep.gamma_minus) << ',' << format_rational(rep.r) << ','
            << format_rational(*rep.margulis) << ',' << format_rational(*rep.edge_ratio) << ','
            << format_rational(*rep.vertex_ratio) << '\n';
      }
    }
    parts[chunk] = local;
    rows[chunk] = buf.str();
  });
  IsoSummary total;
  for (const auto& p : parts) merge(total, p);
  if (out != nullptr) {
    *out << kIsoHeader << '\n';
    for (const auto& r : rows) *out << r;
  }
  return total;
}

void write_persistence_csv(const PersistenceConfig& cfg, std::ostream& out) {
  const GridShape shape(cfg.n, cfg.d);
  shape.require_pow2("persistence estimation");
  std::vector<std::uint32_t> taus = cfg.taus;
  if (taus.empty()) {
    for (std::uint32_t t = 1; t <= cfg.d; t <<= 1) taus.push_back(t);
  }
  out << kPersistenceHeader << '\n';
  for (Family family : cfg.families) {
    const std::uint64_t fseed = derive_seed(cfg.seed, experiment_id("persistence/function"), 0);
    const BoolFunc f = generate(family, shape, cfg.params, fseed);
    const ViolatedEdges edges = violated_aug_edges(f);
    const double I = static_cast<double>(edges.minus.size() + edges.plus.size()) /
                     static_cast<double>(shape.size());
    const double log_n = std::max(1.0, static_cast<double>(shape.log_n()));
    for (std::uint32_t tau : taus) {
      const std::string label = "persistence/" + to_string(family) + "/" + std::to_string(tau);
      const double frac = persistence_fraction(f, tau, cfg.outer, cfg.inner, cfg.seed,
                                               experiment_id(label.c_str()), cfg.workers);
      const double reference =
          tau * I / (cfg.d * log_n) + std::pow(static_cast<double>(cfg.d), -9.0);
      out << cfg.n << ',' << cfg.d << ',' << tau << ',' << to_string(family) << ','
          << format_double(frac) << ',' << format_double(reference) << '\n';
    }
  }
}

ExactRejection exact_rejection(const BoolFunc& f) {
  const GridShape& shape = f.shape();
  shape.require_pow2("exact rejection");
  if (shape.log_n() == 0) return {Rational(0), 0, shape.size()};
  const BitTable table = materialize(f);
  const std::uint32_t d = shape.d();
  const std::uint32_t log_n = shape.log_n();
  const std::uint32_t p = max_tau_exponent(d);
  const std::uint64_t combos = [&] {
    std::uint64_t c = 1;
    for (std::uint32_t i = 0; i < d; ++i) c *= 2 * log_n;
    return c;
  }();
  if (combos * shape.size() > (std::uint64_t{1} << 26)) {
    throw CapacityError("randomness space of " + shape.to_string() + " is too large to enumerate");
  }

  ExactRejection out;
  out.probability = Rational(0);
  std::vector<MatchingId> ms(d);
  std::vector<std::uint32_t> chosen;
  for (std::uint32_t t = 0; t <= p; ++t) {
    const std::uint32_t tau = std::uint32_t{1} << t;
    for (Index xi = 0; xi < shape.size(); ++xi) {
      const Point x = point_of(shape, xi);
      for (std::uint64_t combo = 0; combo < combos; ++combo) {
        std::uint64_t c = combo;
        for (std::uint32_t i = 0; i < d; ++i) {
          ms[i] = {i, static_cast<std::uint32_t>((c / 2) % log_n), static_cast<std::uint32_t>(c % 2)};
          c /= 2 * log_n;
        }
        const auto S = lower_dimensions(shape, x, ms);
        // Weight of one (t, x, combo) cell before splitting over T.
        const Rational cell(1, static_cast<std::int64_t>((p + 1) * shape.size() * combos));
        if (S.size() < tau) {
          ++out.outcomes;
          continue;  // y = x never rejects
        }
        // Enumerate size-tau subsets of S in lexicographic order.
        std::uint64_t subsets = 0;
        std::uint64_t rejecting = 0;
        chosen.assign(tau, 0);
        for (std::uint32_t k = 0; k < tau; ++k) chosen[k] = k;
        while (true) {
          ++subsets;
          if (table.get(xi)) {
            Index yi = xi;
            for (std::uint32_t k : chosen) yi += Index{ms[S[k]].step()} * shape.stride(S[k]);
            if (!table.get(yi)) ++rejecting;
          }
          std::int64_t k = static_cast<std::int64_t>(tau) - 1;
          while (k >= 0 && chosen[k] == S.size() - tau + static_cast<std::uint32_t>(k)) --k;
          if (k < 0) break;
          ++chosen[k];
          for (std::uint32_t j = static_cast<std::uint32_t>(k) + 1; j < tau; ++j) {
            chosen[j] = chosen[j - 1] + 1;
          }
        }
        out.outcomes += subsets;
        out.rejecting_outcomes += rejecting;
        if (rejecting > 0) {
          out.probability += cell * Rational(static_cast<std::int64_t>(rejecting),
                                             static_cast<std::int64_t>(subsets));
        }
      }
    }
  }
  return out;
}

bool StructureReport::ok() const {
  for (const auto& c : classes) {
    if (!c.error.empty() || c.good_parts != c.parts || !c.independent || !c.partition ||
        c.paths != c.pairs || !c.paths_disjoint || !c.paths_hit_violation || c.paths > gamma_count) {
      return false;
    }
  }
  return true;
}

StructureReport structure_report(const GridShape& shape, const BitTable& table) {
  const GridPoset poset(shape);
  StructureReport rep;
  rep.gamma_count = gamma_minus(shape, table).witness.size();
  const OptimalMatching opt = optimal_matching(shape, table);
  for (const auto& [ell, pairs] : opt.mstar.by_distance()) {
    ClassRouting cr;
    cr.ell = ell;
    cr.pairs = pairs.size();
    std::vector<std::pair<Index, Index>> plain;
    for (const auto& p : pairs) plain.emplace_back(p.x, p.y);
    try {
      const auto parts = conflict_free_decompose(poset, plain, ell);
      cr.parts = parts.size();
      std::vector<std::pair<Index, Index>> covered;
      std::vector<CoverGraph> covers;
      for (const auto& part : parts) {
        covered.insert(covered.end(), part.pairs().begin(), part.pairs().end());
        covers.push_back(build_cover_graph(poset, part));
      }
      std::sort(covered.begin(), covered.end());
      std::sort(plain.begin(), plain.end());
      cr.partition = covered == plain;
      for (std::size_t a = 0; a < covers.size(); ++a) {
        for (std::size_t b = a + 1; b < covers.size(); ++b) {
          if (!are_independent(covers[a], covers[b])) cr.independent = false;
        }
      }
      std::set<Index> used;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        if (!is_good(covers[k])) continue;
        ++cr.good_parts;
        cr.degree_monotone = cr.degree_monotone && degree_monotonicity_check(covers[k]);
        cr.layer_dichotomy = cr.layer_dichotomy && layer_size_dichotomy(covers[k], parts[k].size());
        for (const auto& path : route_disjoint_paths(poset, parts[k])) {
          ++cr.paths;
          bool hit = false;
          for (std::size_t s = 0; s + 1 < path.size(); ++s) {
            if (table.get(path[s]) && !table.get(path[s + 1])) hit = true;
          }
          cr.paths_hit_violation = cr.paths_hit_violation && hit;
          for (Index v : path) {
            if (!used.insert(v).second) cr.paths_disjoint = false;
          }
        }
      }
    } catch (const Error& e) {
      cr.error = e.what();
    }
    rep.classes.push_back(std::move(cr));
  }
  return rep;
}

}  // namespace hypermono::tools
