#pragma once

// The verification suite: one check per acceptance criterion, each with a
// pass/fail verdict and human-readable detail lines.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace hypermono::tools {

struct SuiteOptions {
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<std::string> details;
};

using CriterionFn = std::function<CriterionResult(const SuiteOptions&)>;

struct Criterion {
  int id;
  const char* title;
  CriterionFn run;
};

/// Criteria 1 through 9 in order.
const std::vector<Criterion>& criteria();

CriterionResult one_sided_error(const SuiteOptions& opt);
CriterionResult distance_equivalence(const SuiteOptions& opt);
CriterionResult isoperimetry_regression(const SuiteOptions& opt);
CriterionResult routing_pipeline(const SuiteOptions& opt);
CriterionResult crossing_counts(const SuiteOptions& opt);
CriterionResult fourier_suite(const SuiteOptions& opt);
CriterionResult reduction(const SuiteOptions& opt);
CriterionResult calibrated_detection(const SuiteOptions& opt);
CriterionResult determinism(const SuiteOptions& opt);

/// One line per criterion ("PASS 3 ..."), details indented below it.
void print_result(const CriterionResult& r, std::ostream& out, bool details);

/// Runs the selected criteria (all when `only` is empty) and prints each
/// result as soon as it is known. Returns true iff every criterion passed.
bool run_suite(const SuiteOptions& opt, const std::vector<int>& only, std::ostream& out,
               bool details);

/// Pilot sweep behind the calibration constant: for every far pilot
/// configuration, the smallest constant whose repetition count reaches
/// 95% detection at the Wilson lower bound of the single-run rate.
struct PilotRow {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::string family;
  std::string eps;
  std::uint64_t trials = 0;
  std::uint64_t rejections = 0;
  double wilson_lo = 0.0;
  std::uint64_t needed_reps = 0;
  double calibration = 0.0;
};

struct PilotResult {
  std::vector<PilotRow> rows;
  /// Maximum over rows, rounded up to three significant digits.
  double calibration = 0.0;
};

PilotResult calibration_pilot(std::uint64_t seed, unsigned workers);

}  // namespace hypermono::tools
