#include <gtest/gtest.h>

#include <sstream>

#include "hypermono/error.hpp"
#include "hypermono/oracle.hpp"
#include "hypermono/tools/experiments.hpp"
#include "hypermono/tools/fixtures.hpp"
#include "hypermono/tools/suite.hpp"

namespace hypermono::tools {
namespace {

std::size_t count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(2.5e-10), "2.5e-10");
  EXPECT_EQ(format_rational(Rational(3, 8)), "0.375");
  EXPECT_THROW(format_double(1.0 / 0.0), IntegrityError);
}

TEST(FamilyDistance, KnownFamilies) {
  EXPECT_EQ(family_distance(Family::MonotoneThreshold, GridShape(8, 9), {}, 1), Rational(0));
  EXPECT_EQ(family_distance(Family::AntiSlab, GridShape(4, 2), {}, 1), Rational(1, 2));
  EXPECT_EQ(family_distance(Family::AntiSlab, GridShape(8, 8), {}, 1), Rational(1, 2));
  // A block blow-up of the n = 2 parity keeps its distance.
  EXPECT_EQ(family_distance(Family::BlockParity, GridShape(8, 2), {}, 1),
            family_distance(Family::BlockParity, GridShape(2, 2), {}, 1));
  EXPECT_EQ(family_distance(Family::BlockParity, GridShape(4, 3), {}, 1),
            distance_to_monotonicity(generate(Family::BlockParity, GridShape(4, 3), {}, 1)).eps);
  EXPECT_THROW(family_distance(Family::UniformRandom, GridShape(8, 8), {}, 1), CapacityError);
}

TEST(RateCsv, HeaderAndRows) {
  RateConfig cfg;
  cfg.ns = {4};
  cfg.ds = {2, 3};
  cfg.families = {Family::AntiSlab, Family::MonotoneThreshold};
  cfg.trials = 500;
  std::ostringstream out;
  write_rate_csv(cfg, out);
  const std::string csv = out.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,d,family,eps_true,trials,rejections,rate,wilson_lo,wilson_hi");
  EXPECT_EQ(count_lines(csv), 5u);
  EXPECT_NE(csv.find("4,2,monotone_threshold,0,500,0,0,0,"), std::string::npos);
}

TEST(IsoCsv, RowPerFarFunction) {
  IsoConfig cfg;
  cfg.n = 4;
  cfg.d = 1;
  std::ostringstream out;
  const IsoSummary s = run_isoperimetry(cfg, &out);
  // 16 functions on four points, five of them monotone.
  EXPECT_EQ(s.functions, 16u);
  EXPECT_EQ(s.far, 11u);
  EXPECT_EQ(count_lines(out.str()), 12u);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "n,d,function_id,eps,I,I_minus,gamma_minus,r,margulis_ratio,edge_ratio,vertex_ratio");
  cfg.n = 8;
  cfg.d = 3;
  EXPECT_THROW(run_isoperimetry(cfg, nullptr), CapacityError);
}

TEST(IsoCsv, SameBytesForAnyWorkerCount) {
  IsoConfig cfg;
  cfg.n = 4;
  cfg.d = 2;
  cfg.exhaustive = false;
  cfg.samples = 300;
  std::ostringstream a, b;
  cfg.workers = 1;
  run_isoperimetry(cfg, &a);
  cfg.workers = 4;
  run_isoperimetry(cfg, &b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(PersistenceCsv, AllPowersOfTwoByDefault) {
  PersistenceConfig cfg;
  cfg.n = 4;
  cfg.d = 4;
  cfg.families = {Family::RandomMonotone};
  cfg.outer = 50;
  cfg.inner = 20;
  std::ostringstream out;
  write_persistence_csv(cfg, out);
  EXPECT_EQ(count_lines(out.str()), 4u);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "n,d,tau,family,nonpersistent_fraction,reference_bound");
}

TEST(StructureReport, LineExample) {
  const StructureReport r = structure_report(GridShape(4, 1), BitTable::from_mask(0b0011, 4));
  EXPECT_EQ(r.gamma_count, 2u);
  ASSERT_EQ(r.classes.size(), 1u);
  EXPECT_EQ(r.classes[0].ell, 1u);
  EXPECT_EQ(r.classes[0].pairs, 2u);
  EXPECT_EQ(r.classes[0].parts, 2u);
  EXPECT_EQ(r.classes[0].paths, 2u);
  EXPECT_TRUE(r.ok());
}

TEST(Suite, CriteriaInOrder) {
  const auto& all = criteria();
  ASSERT_EQ(all.size(), 9u);
  for (std::size_t k = 0; k < all.size(); ++k) EXPECT_EQ(all[k].id, static_cast<int>(k + 1));
}

TEST(Suite, PrintsVerdictLine) {
  std::ostringstream out;
  print_result(CriterionResult{4, "x", false, {"detail"}}, out, true);
  EXPECT_EQ(out.str(), "FAIL criterion 4: x\n    detail\n");
}

TEST(Fixtures, CalibrationIsPositive) { EXPECT_GT(fixtures::kCalibration, 0.0); }

}  // namespace
}  // namespace hypermono::tools
