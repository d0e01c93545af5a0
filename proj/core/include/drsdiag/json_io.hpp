#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>

#include "drsdiag/admm.hpp"
#include "drsdiag/function_spec.hpp"
#include "drsdiag/pathology.hpp"
#include "drsdiag/zoo.hpp"

namespace drsdiag {

using json = nlohmann::json;

// schema version of the problem file format
inline constexpr int kSchemaVersion = 1;

json to_json(const Vec& v);
Vec vec_from_json(const json& j);

json to_json(const SetSpec& s);
SetSpec set_from_json(const json& j);

json to_json(const FunctionSpec& f);
FunctionSpec function_from_json(const json& j);

/// Problem files: {"schema": 1, "kind": "drs" | "admm", ...}
json to_json(const DrsPair& p);
json to_json(const AdmmProblem& p);
struct ParsedProblem {
  std::variant<DrsPair, AdmmProblem> problem;
};
ParsedProblem problem_from_json(const json& j);

json to_json(const Certificate& c);
json to_json(const IdvEstimate& e);
json to_json(const ObjectiveStats& s);
json diagnosis_to_json(const Diagnosis& d);

/// Trace CSV, one row per record stride:
///   k,dz_norm,obj,obj_runmean,obj_runmin,distdom_f,distdom_g
void write_trace_csv(std::ostream& os, const DrsTrace& trace, std::size_t stride);

/// ADMM trace CSV: k,residual_norm,obj,obj_runmean,obj_runmin
void write_trace_csv(std::ostream& os, const AdmmTrace& trace, std::size_t stride);

}  // namespace drsdiag
