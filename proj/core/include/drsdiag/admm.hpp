#pragma once

#include <optional>
#include <vector>

#include "drsdiag/drs.hpp"
#include "drsdiag/function_spec.hpp"
#include "drsdiag/pathology.hpp"

namespace drsdiag {

/// minimize f(x) + g(y) subject to A x + B y = c.
/// The subproblem solver requires A'A and B'B to be (nonzero) multiples of
/// the identity, which makes both argmins exact prox evaluations.
struct AdmmProblem {
  FunctionSpec f;
  FunctionSpec g;
  Mat a;
  Mat b;
  Vec c;

  void validate() const;  // dimensions + structured-solver preconditions
  std::size_t residual_dim() const { return c.size(); }
};

struct AdmmState {
  Vec x;
  Vec y;
  Vec nu;
  Vec residual;  // A x + B y - c
  std::size_t k = 0;
  double gamma = 1.0;
};

/// One pass of the three updates in the stated order; the dual update
/// nu += residual / gamma holds exactly by construction.
AdmmState admm_step(const AdmmState& state, const AdmmProblem& prob);

struct AdmmInit {
  std::optional<Vec> y0;   // defaults to a domain witness of g
  std::optional<Vec> nu0;  // defaults to zero
};

struct AdmmTrace {
  double gamma = 1.0;
  std::size_t iterations = 0;
  bool converged = false;

  Vec x_final, y_final, nu_final;
  std::vector<double> residual_norms;
  std::vector<double> objective;  // f(x^k) + g(y^k)
  std::vector<double> xy_step_norms;

  // tail snapshot mirroring DrsTrace
  std::size_t tail_start = 0;
  Vec x_at_tail_start, y_at_tail_start;

  std::size_t window() const { return tail_window(iterations); }
  double residual_tail_mean() const;
  bool iterates_convergent() const;  // (x, y) settle within the tail window
};

/// The (y0, nu0) state the iteration actually consumes; x is a placeholder
/// overwritten by the first update.
AdmmState admm_initial_state(const AdmmProblem& prob, double gamma, const AdmmInit& init);

AdmmTrace run_admm(const AdmmProblem& prob, double gamma, const AdmmInit& init,
                   std::size_t max_iter);

/// Objective statistics over the ADMM samples (same family as the DRS side).
ObjectiveStats admm_objective_stats(const AdmmTrace& trace);

/// The splitting pair produced by eliminating the constraint:
///   f~(z) = inf { f(x) | A x + z = 0 },  g~(z) = inf { g(y) | B y - c = z }.
/// Supported when A and B are scalar multiples of the identity and the
/// function algebra absorbs the substitution. The engine ordering for the
/// equivalent run applies the g~ prox first; the substitution maps are
///   x~^{k+1/2} = B y^{k+1} - c,  x~^{k+1} = -A x^{k+2},
///   z^k = -gamma nu^k - A x^{k+1}.
struct ReducedPair {
  FunctionSpec f_tilde;
  FunctionSpec g_tilde;
  double a_scale = 1.0;  // A = a_scale * I
  double b_scale = 1.0;
};

ReducedPair reduce_to_drs(const AdmmProblem& prob);

/// Runs both paths side by side and returns the worst mismatch of the
/// substitution identities over the given number of steps.
double reduction_mismatch(const AdmmProblem& prob, double gamma, std::size_t steps);

enum class RegularityStatus { Satisfied, Violated, Undetermined };

struct RegularityReport {
  RegularityStatus status = RegularityStatus::Undetermined;
  std::optional<Vec> witness_f;  // point of ran A' intersected with ri dom f*
  std::optional<Vec> witness_g;
};

/// Checks that ran A' meets ri dom f* and ran B' meets ri dom g*, the
/// conditions making both subproblems solvable. Undetermined allows the run
/// with a warning; Violated blocks it.
RegularityReport check_regularity(const AdmmProblem& prob);

}  // namespace drsdiag
