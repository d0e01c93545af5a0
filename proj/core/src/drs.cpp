#include "drsdiag/drs.hpp"

#include <algorithm>
#include <cmath>

#include "drsdiag/errors.hpp"

namespace drsdiag {

std::size_t tail_window(std::size_t iterations) {
  return std::min(iterations, std::max<std::size_t>(100, iterations / 10));
}

DrsState drs_step(const DrsState& state, const FunctionSpec& f, const FunctionSpec& g) {
  DrsState next;
  next.gamma = state.gamma;
  next.k = state.k + 1;
  next.x_half = f.prox(state.gamma, state.z);
  next.x_full = g.prox(state.gamma, 2.0 * next.x_half - state.z);
  // z update written through the displacement so that
  // z^{k+1} - z^k == x^{k+1} - x^{k+1/2} holds exactly
  Vec dz = next.x_full - next.x_half;
  next.z = state.z + dz;
  return next;
}

DrsTrace run(const FunctionSpec& f, const FunctionSpec& g, double gamma, Vec z0,
             std::size_t max_iter, const ProbeConfig& probes) {
  if (max_iter < 1) throw InputError("run: max_iter must be >= 1");
  if (f.dim() != g.dim()) throw InputError("run: f and g dimensions differ");
  if (z0.size() != f.dim()) throw InputError("run: z0 dimension mismatch");
  if (gamma <= 0.0) throw InputError("run: gamma must be positive");

  DrsTrace trace;
  trace.gamma = gamma;
  trace.z0 = z0;
  trace.dz_norms.reserve(max_iter);
  trace.objective.reserve(max_iter);
  trace.shadow_step_norms.reserve(max_iter);
  trace.x_half_norms.reserve(max_iter);

  std::optional<SetSpec> dom_f, dom_g;
  if (probes.domain_distances) {
    dom_f = f.domain();
    dom_g = g.domain();
  }

  // ring buffer of (z, x_half) snapshots so window statistics never need the
  // full iterate history
  const std::size_t ring = std::max<std::size_t>(100, max_iter / 10) + 1;
  std::vector<Vec> z_ring(ring), xh_ring(ring);

  Vec z = std::move(z0);
  Vec x_half_prev;
  Vec x_half, x_full, dz;
  std::size_t k = 0;

  z_ring[0] = z;
  while (k < max_iter) {
    x_half = f.prox(gamma, z);
    x_full = g.prox(gamma, 2.0 * x_half - z);
    dz = x_full - x_half;

    trace.dz_norms.push_back(norm(dz));
    trace.objective.push_back(f.eval(x_half, kFeasTol) + g.eval(x_full, kFeasTol));
    trace.x_half_norms.push_back(norm(x_half));
    if (k > 0) trace.shadow_step_norms.push_back(dist(x_half, x_half_prev));
    if (probes.domain_distances) {
      trace.dist_dom_f.push_back(dist(x_half, project(*dom_f, x_half)));
      trace.dist_dom_g.push_back(dist(x_half, project(*dom_g, x_half)));
    }

    z += dz;
    ++k;
    z_ring[k % ring] = z;
    xh_ring[k % ring] = x_half;
    x_half_prev = x_half;

    if (trace.dz_norms.back() <= kFixedPointTol) {
      trace.converged = true;
      break;
    }
    if (norm(z) > kOverflowNorm) {
      trace.overflow = true;
      break;
    }
  }

  trace.iterations = k;
  trace.z_final = z;
  trace.x_half_final = x_half;
  trace.x_full_final = x_full;
  trace.dz_last = dz;

  const std::size_t w = tail_window(k);
  trace.tail_start = k - w;
  trace.z_at_tail_start = z_ring[trace.tail_start % ring];
  trace.x_half_at_tail_start = xh_ring[std::max<std::size_t>(trace.tail_start, 1) % ring];
  return trace;
}

bool IdvEstimate::zero_verdict() const {
  return fixed_point || std::max(norm(v_from_slope), norm(v_from_diff)) <= kIdvTol;
}

IdvEstimate estimate_idv(const DrsTrace& trace) {
  const std::size_t k = trace.iterations;
  const std::size_t w = trace.window();
  if ((k < 2 * w || w == 0) && !trace.converged) {
    throw InputError("estimate_idv: trace too short for the tail window");
  }
  IdvEstimate est;
  est.window = w;
  est.fixed_point = trace.converged;
  est.v_from_slope = (-1.0 / static_cast<double>(k)) * trace.z_final;
  est.v_from_diff = (-1.0 / static_cast<double>(w)) * (trace.z_final - trace.z_at_tail_start);
  est.agreement = dist(est.v_from_slope, est.v_from_diff);
  return est;
}

std::vector<double> running_mean(const std::vector<double>& samples) {
  std::vector<double> means;
  means.reserve(samples.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    sum += samples[i];
    means.push_back(sum / static_cast<double>(i + 1));
  }
  return means;
}

ObjectiveStats objective_stats(const DrsTrace& trace) {
  const auto& obj = trace.objective;
  ObjectiveStats st;
  st.window = trace.window();
  st.finite_samples = static_cast<std::size_t>(
      std::count_if(obj.begin(), obj.end(), [](double v) { return std::isfinite(v); }));
  st.all_infinite = st.finite_samples == 0;
  if (st.all_infinite) {
    st.running_mean_final = st.mean_over_tail = st.min_over_tail = st.min_over_run = kInf;
    return st;
  }

  double sum = 0.0;
  st.min_over_run = kInf;
  for (double v : obj) {
    sum += v;
    st.min_over_run = std::min(st.min_over_run, v);
  }
  st.running_mean_final = sum / static_cast<double>(obj.size());

  const std::size_t start = obj.size() - st.window;
  double tail_sum = 0.0;
  st.min_over_tail = kInf;
  for (std::size_t i = start; i < obj.size(); ++i) {
    tail_sum += obj[i];
    st.min_over_tail = std::min(st.min_over_tail, obj[i]);
  }
  st.mean_over_tail = tail_sum / static_cast<double>(st.window);

  // centered least squares on the tail, ignoring infinite samples
  double kbar = 0.0, ybar = 0.0;
  std::size_t nfin = 0;
  for (std::size_t i = start; i < obj.size(); ++i) {
    if (!std::isfinite(obj[i])) continue;
    kbar += static_cast<double>(i);
    ybar += obj[i];
    ++nfin;
  }
  if (nfin >= 2) {
    kbar /= static_cast<double>(nfin);
    ybar /= static_cast<double>(nfin);
    double num = 0.0, den = 0.0;
    for (std::size_t i = start; i < obj.size(); ++i) {
      if (!std::isfinite(obj[i])) continue;
      double dk = static_cast<double>(i) - kbar;
      num += dk * (obj[i] - ybar);
      den += dk * dk;
    }
    st.slope_tail = (den > 0.0) ? num / den : 0.0;
  }
  return st;
}

}  // namespace drsdiag
