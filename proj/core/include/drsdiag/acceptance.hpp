#pragma once

#include <optional>
#include <string>
#include <vector>

namespace drsdiag::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::vector<std::string> details;     // one line per sub-check
  std::vector<std::string> deviations;  // soft mismatches that are logged, not failed
};

struct Options {
  std::optional<std::string> only_entry;  // restrict to criteria touching one zoo id
  std::optional<int> inject_failure;      // test fixture: force this criterion red
};

std::vector<int> criterion_ids();
std::string criterion_name(int id);

/// Zoo ids a criterion exercises (used by the --only filter).
std::vector<std::string> criterion_entries(int id);

CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_all(const Options& opts = {});

/// One pass/fail line per criterion; returns true when everything passed.
bool print_table(std::ostream& os, const std::vector<CriterionResult>& results);

}  // namespace drsdiag::acceptance
