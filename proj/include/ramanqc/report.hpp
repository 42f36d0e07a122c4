#pragma once

// Reproduction suite shared by the `report` command and the acceptance test.

#include <string>
#include <vector>

#include "ramanqc/config.hpp"

namespace ramanqc::report {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string measured;  // human-readable numbers behind the verdict
  double seconds = 0.0;
};

// Criteria 1..10; anything thrown while evaluating one counts as a failure.
CriterionResult run_criterion(int id, const config::RunConfig& cfg);
inline constexpr int kCriteria = 10;

struct ReferenceCheck {
  std::string name;
  double value = 0.0;
  double reference = 0.0;  // published value
  std::string unit;
  bool pass = false;
};

std::vector<ReferenceCheck> reference_checks(const config::RunConfig& cfg);

struct Report {
  std::vector<CriterionResult> criteria;  // 1..11
  std::vector<ReferenceCheck> reference;
  double seconds = 0.0;
  bool pass = false;
};

// Runs criteria 1..10, the reference-value comparisons, and adds criterion 11
// (everything passes within the time budget).
Report run_report(const config::RunConfig& cfg);
inline constexpr double kReportBudgetSeconds = 300.0;

}  // namespace ramanqc::report
