#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "drsdiag/function_spec.hpp"

namespace drsdiag {

/// Default engine tolerances.
inline constexpr double kFixedPointTol = 1e-10;
inline constexpr double kIdvTol = 1e-4;
inline constexpr double kFeasTol = 1e-9;
inline constexpr double kOverflowNorm = 1e300;

/// Tail window used for all trailing statistics: max(100, k/10).
std::size_t tail_window(std::size_t iterations);

struct DrsState {
  Vec z;
  Vec x_half;  // Prox_{gamma f}(z_prev)
  Vec x_full;  // Prox_{gamma g}(2 x_half - z_prev)
  std::size_t k = 0;
  double gamma = 1.0;
};

/// One pass of the splitting step from state.z.
DrsState drs_step(const DrsState& state, const FunctionSpec& f, const FunctionSpec& g);

struct ProbeConfig {
  bool domain_distances = false;
};

struct DrsTrace {
  double gamma = 1.0;
  std::size_t iterations = 0;  // number of steps taken
  bool converged = false;      // fixed-point exit
  bool overflow = false;       // iterate norm blew past kOverflowNorm

  Vec z0;
  Vec z_final;
  Vec x_half_final;
  Vec x_full_final;

  std::vector<double> dz_norms;           // ||z^{k+1} - z^k||, one per step
  std::vector<double> objective;          // f(x^{k+1/2}) + g(x^{k+1}), extended real
  std::vector<double> shadow_step_norms;  // ||x^{k+3/2} - x^{k+1/2}||, from step 1
  std::vector<double> x_half_norms;
  std::vector<double> dist_dom_f;  // empty unless probed
  std::vector<double> dist_dom_g;

  // snapshots supporting the window estimators: state at K - W for W = tail_window(K)
  std::size_t tail_start = 0;
  Vec z_at_tail_start;
  Vec x_half_at_tail_start;
  Vec dz_last;  // z^K - z^{K-1}, exact displacement of the final step

  std::size_t window() const { return tail_window(iterations); }
};

/// Runs DRS from z0. Stops early at a fixed point (displacement below
/// kFixedPointTol) or when the iterate norm overflows; otherwise runs to
/// max_iter. The trace is complete in every exit mode.
DrsTrace run(const FunctionSpec& f, const FunctionSpec& g, double gamma, Vec z0,
             std::size_t max_iter, const ProbeConfig& probes = {});

struct IdvEstimate {
  Vec v_from_slope;  // -z^K / K
  Vec v_from_diff;   // -(mean displacement over the tail window)
  double agreement = 0.0;
  std::size_t window = 0;
  bool fixed_point = false;   // run ended at a fixed point, so v = 0 exactly
  bool zero_verdict() const;  // fixed point, or both estimator norms below kIdvTol
};

/// Both infimal-displacement estimators from a finished trace.
/// Requires trace length >= 2 * window unless the run converged.
IdvEstimate estimate_idv(const DrsTrace& trace);

struct ObjectiveStats {
  double running_mean_final = 0.0;  // cumulative mean at the last step
  double mean_over_tail = 0.0;      // plain mean of the tail-window samples
  double min_over_tail = 0.0;       // running-min surrogate for liminf
  double min_over_run = 0.0;
  double slope_tail = 0.0;  // least-squares slope of (k, objective) on the tail
  std::size_t window = 0;
  std::size_t finite_samples = 0;
  bool all_infinite = false;  // "never jointly feasible at sample points"
};

ObjectiveStats objective_stats(const DrsTrace& trace);

/// Cumulative running mean of the objective samples (extended-real safe).
std::vector<double> running_mean(const std::vector<double>& samples);

}  // namespace drsdiag
