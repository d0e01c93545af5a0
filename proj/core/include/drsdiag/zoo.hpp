#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "drsdiag/admm.hpp"
#include "drsdiag/function_spec.hpp"
#include "drsdiag/pathology.hpp"

namespace drsdiag {

struct DrsPair {
  FunctionSpec f;
  FunctionSpec g;
};

/// One canonical problem with its known primal-dual status.
struct ZooEntry {
  std::string id;
  std::string source;  // where the construction comes from
  std::variant<DrsPair, AdmmProblem> problem;
  GroundTruth truth;

  bool is_admm() const { return std::holds_alternative<AdmmProblem>(problem); }
  const DrsPair& drs() const { return std::get<DrsPair>(problem); }
  const AdmmProblem& admm() const { return std::get<AdmmProblem>(problem); }
};

/// The diagnostic corpus. Every entry is validated (ground-truth pattern,
/// prox resolvability) on first access.
const std::vector<ZooEntry>& catalog();

/// Lookup by id; nullptr when absent.
const ZooEntry* find_entry(const std::string& id);

}  // namespace drsdiag
