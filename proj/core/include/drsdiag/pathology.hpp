#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drsdiag/drs.hpp"
#include "drsdiag/function_spec.hpp"

namespace drsdiag {

/// Primal-dual status taxonomy. A through F assume strong duality
/// (total duality, no dual solution, no primal solution, value -inf without
/// an improving direction, improving direction exists, primal infeasible);
/// G marks a duality gap. For ADMM ground truth the same enum carries the
/// coarser five-case scheme (its case C merges C, D and E).
enum class CaseLabel { A, B, C, D, E, F, G, Undetermined };

std::string case_label_name(CaseLabel c);
std::string case_definition(CaseLabel c);

enum class FeasStatus { Feasible, WeaklyInfeasible, StronglyInfeasible, Unknown };

struct Certificate {
  enum class Kind { DualStrongInfeasibility, PrimalStrongInfeasibility };
  Kind kind;
  Vec direction;      // d (primal improving) or d' (dual improving)
  double rec_f = 0.0; // recession evidence, +inf when unavailable
  double rec_g = 0.0;
  double margin = 0.0;  // -(rec f + rec g), or the separation distance
  bool valid = false;
  std::string method;  // "recession" or "domain-distance"
};

struct GroundTruth {
  double p_star = 0.0;
  double d_star = 0.0;
  double p_minus = 0.0;  // equals d_star whenever recorded
  CaseLabel label = CaseLabel::Undetermined;
  FeasStatus primal = FeasStatus::Unknown;
  FeasStatus dual = FeasStatus::Unknown;
  bool primal_solution = false;
  bool dual_solution = false;
  std::optional<Vec> known_direction;       // canonical primal improving direction
  std::optional<Vec> known_dual_direction;  // d'
  std::optional<double> gamma_threshold;    // empirical gamma_min when reported

  void validate() const;  // weak duality + case/value pattern consistency
};

/// d = Prox_{rec f + rec g}(0). Zero iff no primal improving direction.
/// Resolved in closed form where possible, by Dykstra for cone
/// intersections, and by an inner DRS run on the regularized recession
/// problem as a general fallback.
Vec improving_direction(const FunctionSpec& f, const FunctionSpec& g);

struct GapResult {
  Vec direction;  // d' = -Pi_{cl(dom f - dom g)}(0)
  double distance = 0.0;
  bool converged = false;  // alternating projections met the optimality check
};

/// Alternating-projection computation of the domain gap; the returned
/// direction is nonzero exactly when the primal problem is strongly
/// infeasible (up to the reported convergence flag).
GapResult dual_improving_direction(const FunctionSpec& f, const FunctionSpec& g);

/// Closed-form infimal displacement vector from the feasibility statuses:
/// zero when neither side is strongly infeasible, -gamma d when the dual is
/// strongly infeasible, -d' (gamma-free) when the primal is. Nullopt when
/// the statuses leave the case undetermined.
std::optional<Vec> analytic_idv(const FunctionSpec& f, const FunctionSpec& g, double gamma,
                                FeasStatus primal, FeasStatus dual);

/// Validates a certificate with the recession oracle (dual-side) or the
/// support-function/domain-distance check (primal-side); fills the margin.
bool check_certificate(Certificate& cert, const FunctionSpec& f, const FunctionSpec& g);

struct Diagnosis {
  CaseLabel label = CaseLabel::Undetermined;
  bool b_or_a_boundary = false;  // label B from finite data only
  std::string caveat;

  IdvEstimate idv;
  std::optional<Vec> v_analytic;
  std::optional<Certificate> certificate;
  ObjectiveStats objective;

  double displacement_tail_mean = 0.0;
  double displacement_final = 0.0;
  double shadow_step_tail_max = 0.0;
  bool shadow_iterates_convergent = false;

  std::optional<double> observed_limit;  // tail mean when the samples settle
  std::vector<std::string> evidence;
};

/// Decision tree over the exact direction oracles, the displacement
/// estimates and the objective statistics. Ground truth, when supplied,
/// settles the boundary cases that finite data cannot (A-vs-B, case G).
Diagnosis classify(const FunctionSpec& f, const FunctionSpec& g, const DrsTrace& trace,
                   const IdvEstimate& idv, const std::optional<GroundTruth>& gt);

}  // namespace drsdiag
