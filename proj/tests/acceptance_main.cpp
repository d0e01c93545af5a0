// Acceptance runner: executes the numbered criteria and prints one
// pass/fail line each. Exits nonzero when any executed criterion fails.

#include <cstring>
#include <iostream>
#include <string>

#include "drsdiag/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace drsdiag::acceptance;

  std::optional<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--list") == 0) {
      for (int id : criterion_ids()) {
        std::cout << id << ": " << criterion_name(id) << "\n";
      }
      return 0;
    }
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::stoi(argv[++i]);
    }
  }

  std::vector<CriterionResult> results;
  if (only) {
    results.push_back(run_criterion(*only));
  } else {
    results = run_all({});
  }
  bool ok = print_table(std::cout, results);
  return ok ? 0 : 3;
}
