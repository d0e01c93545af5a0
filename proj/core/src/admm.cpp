#include "drsdiag/admm.hpp"

#include <algorithm>
#include <cmath>

#include "drsdiag/errors.hpp"

namespace drsdiag {

namespace {

/// M'M = s^2 I test; returns s (0 for the zero map, nullopt otherwise).
std::optional<double> scaled_isometry(const Mat& m) {
  const std::size_t p = m.cols();
  double s2 = 0.0;
  for (std::size_t k = 0; k < m.rows(); ++k) s2 += m(k, 0) * m(k, 0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < m.rows(); ++k) v += m(k, i) * m(k, j);
      double want = (i == j) ? s2 : 0.0;
      if (std::abs(v - want) > 1e-12 * (1.0 + std::abs(s2))) return std::nullopt;
    }
  }
  return std::sqrt(s2);
}

/// A = s I exactly (square); needed by the constraint-elimination map.
std::optional<double> scalar_identity(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() == 0) return std::nullopt;
  double s = m(0, 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != (i == j ? s : 0.0)) return std::nullopt;
    }
  }
  if (s == 0.0) return std::nullopt;
  return s;
}

Vec prox_under_map(const FunctionSpec& h, const Mat& m, double scale, double gamma,
                   const Vec& w) {
  // argmin h(x) + (1/(2 gamma)) ||M x + w||^2 with M'M = scale^2 I
  double s2 = scale * scale;
  Vec center = (-1.0 / s2) * m.apply_t(w);
  return h.prox(gamma / s2, center);
}

}  // namespace

void AdmmProblem::validate() const {
  const std::size_t n = c.size();
  if (a.rows() != n || b.rows() != n) throw InputError("admm: constraint row mismatch");
  if (a.cols() != f.dim() || b.cols() != g.dim()) {
    throw InputError("admm: block column/function dimension mismatch");
  }
  if (!scaled_isometry(a) || !scaled_isometry(b)) {
    throw CapabilityError(
        "admm subproblems need A'A and B'B to be scalar multiples of the identity");
  }
  f.validate();
  g.validate();
}

AdmmState admm_step(const AdmmState& state, const AdmmProblem& prob) {
  auto sa = scaled_isometry(prob.a);
  auto sb = scaled_isometry(prob.b);
  if (!sa || !sb || *sa == 0.0 || *sb == 0.0) {
    throw CapabilityError("admm step needs nonzero scaled-isometry blocks");
  }
  const double gamma = state.gamma;

  AdmmState next;
  next.gamma = gamma;
  next.k = state.k + 1;
  Vec w_x = prob.b.apply(state.y) - prob.c + gamma * state.nu;
  next.x = prox_under_map(prob.f, prob.a, *sa, gamma, w_x);
  Vec w_y = prob.a.apply(next.x) - prob.c + gamma * state.nu;
  next.y = prox_under_map(prob.g, prob.b, *sb, gamma, w_y);
  next.residual = prob.a.apply(next.x) + prob.b.apply(next.y) - prob.c;
  next.nu = state.nu + (1.0 / gamma) * next.residual;
  return next;
}

AdmmState admm_initial_state(const AdmmProblem& prob, double gamma, const AdmmInit& init) {
  AdmmState s;
  s.gamma = gamma;
  s.k = 0;
  s.x = Vec::zeros(prob.f.dim());  // overwritten by the first update
  s.y = init.y0 ? *init.y0 : prob.g.domain_witness();
  s.nu = init.nu0 ? *init.nu0 : Vec::zeros(prob.residual_dim());
  s.residual = Vec::zeros(prob.residual_dim());
  return s;
}

double AdmmTrace::residual_tail_mean() const {
  const std::size_t w = window();
  double s = 0.0;
  for (std::size_t i = residual_norms.size() - w; i < residual_norms.size(); ++i) {
    s += residual_norms[i];
  }
  return s / static_cast<double>(w);
}

bool AdmmTrace::iterates_convergent() const {
  if (converged) return true;
  double disp = dist(x_final, x_at_tail_start) + dist(y_final, y_at_tail_start);
  return disp <= 0.05;
}

AdmmTrace run_admm(const AdmmProblem& prob, double gamma, const AdmmInit& init,
                   std::size_t max_iter) {
  if (max_iter < 1) throw InputError("run_admm: max_iter must be >= 1");
  if (gamma <= 0.0) throw InputError("run_admm: gamma must be positive");
  prob.validate();
  if (check_regularity(prob).status == RegularityStatus::Violated) {
    throw CapabilityError("admm subproblems unsolvable: regularity conditions violated");
  }

  AdmmTrace trace;
  trace.gamma = gamma;
  trace.residual_norms.reserve(max_iter);
  trace.objective.reserve(max_iter);

  const std::size_t ring = std::max<std::size_t>(100, max_iter / 10) + 1;
  std::vector<Vec> x_ring(ring), y_ring(ring);

  AdmmState s = admm_initial_state(prob, gamma, init);
  x_ring[0] = s.x;
  y_ring[0] = s.y;
  Vec x_prev = s.x, y_prev = s.y;

  std::size_t k = 0;
  while (k < max_iter) {
    s = admm_step(s, prob);
    ++k;
    trace.residual_norms.push_back(norm(s.residual));
    trace.objective.push_back(prob.f.eval(s.x, kFeasTol) + prob.g.eval(s.y, kFeasTol));
    double step = (k > 1) ? dist(s.x, x_prev) + dist(s.y, y_prev) : kInf;
    trace.xy_step_norms.push_back(std::isfinite(step) ? step : 0.0);
    x_ring[k % ring] = s.x;
    y_ring[k % ring] = s.y;
    x_prev = s.x;
    y_prev = s.y;

    if (k > 1 && trace.residual_norms.back() <= kFixedPointTol && step <= kFixedPointTol) {
      trace.converged = true;
      break;
    }
  }

  trace.iterations = k;
  trace.x_final = s.x;
  trace.y_final = s.y;
  trace.nu_final = s.nu;
  const std::size_t w = tail_window(k);
  trace.tail_start = k - w;
  trace.x_at_tail_start = x_ring[std::max<std::size_t>(trace.tail_start, 1) % ring];
  trace.y_at_tail_start = y_ring[std::max<std::size_t>(trace.tail_start, 1) % ring];
  return trace;
}

ObjectiveStats admm_objective_stats(const AdmmTrace& trace) {
  DrsTrace shim;
  shim.iterations = trace.iterations;
  shim.objective = trace.objective;
  return objective_stats(shim);
}

ReducedPair reduce_to_drs(const AdmmProblem& prob) {
  prob.validate();
  auto sa = scalar_identity(prob.a);
  auto sb = scalar_identity(prob.b);
  if (!sa || !sb) {
    throw CapabilityError("constraint elimination needs A and B to be scalar identities");
  }
  // x = -z / a  and  y = (z + c) / b
  return ReducedPair{prob.f.substitute_affine(-1.0 / *sa, Vec::zeros(prob.f.dim())),
                     prob.g.substitute_affine(1.0 / *sb, (1.0 / *sb) * prob.c), *sa, *sb};
}

double reduction_mismatch(const AdmmProblem& prob, double gamma, std::size_t steps) {
  ReducedPair rp = reduce_to_drs(prob);

  // constrained path: record x^k, y^k, nu^k
  std::vector<AdmmState> hist;
  hist.push_back(admm_initial_state(prob, gamma, {}));
  for (std::size_t k = 0; k < steps + 2; ++k) hist.push_back(admm_step(hist.back(), prob));

  // eliminated path, g~ prox applied first; the substitution identities are
  //   x~^{k+1/2} = B y^{k+1} - c,  x~^{k+1} = -A x^{k+2},  z^k = -gamma nu^k - A x^{k+1}
  Vec z = -gamma * hist[0].nu - prob.a.apply(hist[1].x);
  double worst = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    worst = std::max(worst, dist(z, -gamma * hist[k].nu - prob.a.apply(hist[k + 1].x)));
    Vec x_half = rp.g_tilde.prox(gamma, z);
    Vec x_full = rp.f_tilde.prox(gamma, 2.0 * x_half - z);
    worst = std::max(worst, dist(x_half, prob.b.apply(hist[k + 1].y) - prob.c));
    worst = std::max(worst, dist(x_full, -1.0 * prob.a.apply(hist[k + 2].x)));
    z += x_full - x_half;
  }
  return worst;
}

RegularityReport check_regularity(const AdmmProblem& prob) {
  RegularityReport rep;
  auto side = [&](const Mat& m, const FunctionSpec& h,
                  std::optional<Vec>& witness) -> RegularityStatus {
    auto s = scaled_isometry(m);
    if (!s) return RegularityStatus::Undetermined;
    if (*s != 0.0) {
      // ran M' is everything; any relative-interior point of dom h* works
      witness = h.conjugate_domain_ri_point();
      return witness ? RegularityStatus::Satisfied : RegularityStatus::Undetermined;
    }
    // zero map: need 0 in ri dom h*
    switch (h.conjugate_domain_ri_contains(Vec::zeros(h.dim()))) {
      case TriState::Yes:
        witness = Vec::zeros(h.dim());
        return RegularityStatus::Satisfied;
      case TriState::No:
        return RegularityStatus::Violated;
      default:
        return RegularityStatus::Undetermined;
    }
  };
  RegularityStatus sf = side(prob.a, prob.f, rep.witness_f);
  RegularityStatus sg = side(prob.b, prob.g, rep.witness_g);
  if (sf == RegularityStatus::Violated || sg == RegularityStatus::Violated) {
    rep.status = RegularityStatus::Violated;
  } else if (sf == RegularityStatus::Satisfied && sg == RegularityStatus::Satisfied) {
    rep.status = RegularityStatus::Satisfied;
  } else {
    rep.status = RegularityStatus::Undetermined;
  }
  return rep;
}

}  // namespace drsdiag
