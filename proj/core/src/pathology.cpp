#include "drsdiag/pathology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "drsdiag/errors.hpp"

namespace drsdiag {

namespace {

constexpr double kDirTol = 1e-6;          // below this a direction counts as zero
constexpr double kLevelUnbounded = 2.0;   // running-mean level flagging +-inf drift
constexpr double kTrendTol = 0.02;        // running-mean tail change flagging drift
constexpr std::size_t kInnerCap = 100000;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string case_label_name(CaseLabel c) {
  switch (c) {
    case CaseLabel::A: return "a";
    case CaseLabel::B: return "b";
    case CaseLabel::C: return "c";
    case CaseLabel::D: return "d";
    case CaseLabel::E: return "e";
    case CaseLabel::F: return "f";
    case CaseLabel::G: return "g";
    case CaseLabel::Undetermined: return "undetermined";
  }
  return "?";
}

std::string case_definition(CaseLabel c) {
  switch (c) {
    case CaseLabel::A:
      return "total duality: primal and dual solutions exist and d* = p*";
    case CaseLabel::B:
      return "d* = p* finite, the primal has a solution, the dual has none";
    case CaseLabel::C:
      return "d* = p* finite, the primal is feasible but has no solution";
    case CaseLabel::D:
      return "d* = p* = -inf, the primal is feasible, no improving direction";
    case CaseLabel::E:
      return "d* = p* = -inf with an improving direction (dual strongly infeasible)";
    case CaseLabel::F:
      return "d* = p* = +inf, the primal is infeasible";
    case CaseLabel::G:
      return "strong duality fails: d* < p*";
    case CaseLabel::Undetermined:
      return "finite evidence is ambiguous";
  }
  return "?";
}

void GroundTruth::validate() const {
  if (!(d_star <= p_star)) throw InputError("ground truth violates weak duality");
  if (label == CaseLabel::G) {
    if (!(d_star < p_star)) throw InputError("case g requires a duality gap");
    return;
  }
  if (label == CaseLabel::Undetermined) return;
  if (d_star != p_star) throw InputError("cases a-f require d* = p*");
  switch (label) {
    case CaseLabel::A:
      if (!std::isfinite(p_star) || !primal_solution || !dual_solution) {
        throw InputError("case a pattern mismatch");
      }
      break;
    case CaseLabel::B:
      if (!std::isfinite(p_star) || !primal_solution || dual_solution) {
        throw InputError("case b pattern mismatch");
      }
      break;
    case CaseLabel::C:
      if (!std::isfinite(p_star) || primal_solution) throw InputError("case c pattern mismatch");
      break;
    case CaseLabel::D:
      if (std::isfinite(p_star)) throw InputError("case d needs an infinite value");
      break;
    case CaseLabel::E:
      if (p_star != -kInf) throw InputError("case e pattern mismatch");
      break;
    case CaseLabel::F:
      if (p_star != kInf || primal == FeasStatus::Feasible) {
        throw InputError("case f pattern mismatch");
      }
      break;
    default:
      break;
  }
}

namespace {

/// rec f + rec g collected into: linear'd + sum_i w_i |d_i| + indicator of a
/// cone intersection.
struct RecStructure {
  Vec linear;
  std::map<std::size_t, double> abs_weights;
  std::vector<SetSpec> cones;
};

void collect_recession(const FunctionSpec& f, RecStructure& rs) {
  rs.linear += f.linear_part();
  if (f.indicator_part()) rs.cones.push_back(recession_cone(*f.indicator_part()));
  const std::size_t n = f.dim();
  for (const auto& a : f.atoms()) {
    switch (a.kind) {
      case AtomKind::Abs:
        rs.abs_weights[a.i] += a.weight * std::abs(a.inner_scale);
        break;
      case AtomKind::NegLog: {
        Vec normal(n);
        normal[a.i] = -a.inner_scale;
        rs.cones.push_back(SetSpec::halfspace(std::move(normal), 0.0, Vec::zeros(n)));
        break;
      }
      case AtomKind::InvSqrtNeg: {
        Vec normal(n);
        normal[a.i] = a.inner_scale;
        rs.cones.push_back(SetSpec::halfspace(std::move(normal), 0.0, Vec::zeros(n)));
        break;
      }
      case AtomKind::ExpNegSqrtProd: {
        std::vector<double> lo(n, -kInf), hi(n, kInf);
        lo[a.i] = 0.0;
        lo[a.j] = 0.0;
        rs.cones.push_back(SetSpec::box(std::move(lo), std::move(hi), Vec::zeros(n)));
        break;
      }
    }
  }
}

Vec project_cones(const std::vector<SetSpec>& cones, const Vec& y) {
  if (cones.empty()) return y;
  if (cones.size() == 1) return project(cones.front(), y);
  std::vector<SetSpec> members = cones;
  ProjectOptions opts;
  opts.dykstra_max_sweeps = 20000;  // a candidate is enough; it gets verified below
  return project(SetSpec::intersection(std::move(members), Vec::zeros(y.size())), y, opts);
}

/// Inner DRS fallback for min linear'd + sum w|d_i| + delta_cones(d) + ||d||^2/2,
/// used when the abs terms and the cones share coordinates.
Vec rec_prox_inner_drs(const RecStructure& rs) {
  const std::size_t n = rs.linear.size();
  const double gamma = 1.0;
  auto prox_f = [&](const Vec& z) { return project_cones(rs.cones, z - gamma * rs.linear); };
  auto prox_g = [&](const Vec& z) {
    // atoms plus the strongly convex half-norm term, coordinatewise
    Vec u(n);
    for (std::size_t i = 0; i < n; ++i) {
      double w = 0.0;
      if (auto it = rs.abs_weights.find(i); it != rs.abs_weights.end()) w = it->second;
      u[i] = soft_threshold(z[i], gamma * w) / (1.0 + gamma);
    }
    return u;
  };
  Vec z = Vec::zeros(n);
  for (std::size_t k = 0; k < kInnerCap; ++k) {
    Vec xh = prox_f(z);
    Vec xf = prox_g(2.0 * xh - z);
    Vec dz = xf - xh;
    z += dz;
    if (norm(dz) <= 1e-13 * (1.0 + norm(z))) return prox_f(z);
  }
  throw CapabilityError("inner solver for the recession prox did not converge");
}

}  // namespace

namespace {

/// The recession prox is the unique minimizer of the strongly convex
/// rec f(d) + rec g(d) + ||d||^2/2, whose value at 0 is 0. A candidate that
/// does not strictly beat 0 (including an infeasible one, where the exact
/// recession oracle returns +inf) is therefore numerical debris from a
/// tangent cone intersection, and 0 is the correct output.
Vec snap_to_zero_unless_improving(Vec d, const FunctionSpec& f, const FunctionSpec& g) {
  double value = f.recession(d).value + g.recession(d).value + 0.5 * dot(d, d);
  if (value <= -1e-12 * (1.0 + norm(d))) return d;
  return Vec::zeros(d.size());
}

}  // namespace

Vec improving_direction(const FunctionSpec& f, const FunctionSpec& g) {
  if (f.dim() != g.dim()) throw InputError("improving_direction: dimension mismatch");
  RecStructure rs;
  rs.linear = Vec::zeros(f.dim());
  collect_recession(f, rs);
  collect_recession(g, rs);

  if (rs.abs_weights.empty()) {
    return snap_to_zero_unless_improving(project_cones(rs.cones, -rs.linear), f, g);
  }

  std::vector<bool> cone_coords(f.dim(), false);
  for (const auto& c : rs.cones) {
    auto mask = c.constrained_coords();
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) cone_coords[i] = true;
    }
  }
  bool overlap = std::any_of(rs.abs_weights.begin(), rs.abs_weights.end(),
                             [&](const auto& kv) { return cone_coords[kv.first]; });
  if (overlap) return snap_to_zero_unless_improving(rec_prox_inner_drs(rs), f, g);

  Vec d = project_cones(rs.cones, -rs.linear);
  for (const auto& [i, w] : rs.abs_weights) d[i] = soft_threshold(-rs.linear[i], w);
  return snap_to_zero_unless_improving(std::move(d), f, g);
}

GapResult dual_improving_direction(const FunctionSpec& f, const FunctionSpec& g) {
  if (f.dim() != g.dim()) throw InputError("dual_improving_direction: dimension mismatch");
  SetSpec dom_f = f.domain();
  SetSpec dom_g = g.domain();

  Vec a = f.domain_witness();
  Vec b = project(dom_g, a);
  double gap_prev = kInf;
  for (std::size_t t = 0; t < kInnerCap; ++t) {
    a = project(dom_f, b);
    b = project(dom_g, a);
    double gap = dist(a, b);
    if (std::abs(gap_prev - gap) <= 1e-12 * (1.0 + gap)) break;
    gap_prev = gap;
  }

  GapResult r;
  r.distance = dist(a, b);
  r.direction = b - a;  // d' = -(a - b) = -Pi_{cl(dom f - dom g)}(0)
  double opt = std::max(dist(project(dom_f, b), a), dist(project(dom_g, a), b));
  r.converged = opt <= 1e-9 * (1.0 + r.distance);
  return r;
}

std::optional<Vec> analytic_idv(const FunctionSpec& f, const FunctionSpec& g, double gamma,
                                FeasStatus primal, FeasStatus dual) {
  if (gamma <= 0.0) throw InputError("analytic_idv: gamma must be positive");
  bool dual_strong, primal_strong;

  if (dual == FeasStatus::Unknown) {
    Vec d = improving_direction(f, g);
    dual_strong = norm(d) > kDirTol;
  } else {
    dual_strong = dual == FeasStatus::StronglyInfeasible;
  }
  if (primal == FeasStatus::Unknown) {
    GapResult gap = dual_improving_direction(f, g);
    if (!gap.converged && norm(gap.direction) > kDirTol) return std::nullopt;
    primal_strong = gap.converged && norm(gap.direction) > kDirTol;
  } else {
    primal_strong = primal == FeasStatus::StronglyInfeasible;
  }

  if (dual_strong && primal_strong) return std::nullopt;
  if (dual_strong) return -gamma * improving_direction(f, g);
  if (primal_strong) return -1.0 * dual_improving_direction(f, g).direction;
  return Vec::zeros(f.dim());
}

bool check_certificate(Certificate& cert, const FunctionSpec& f, const FunctionSpec& g) {
  cert.valid = false;
  if (norm(cert.direction) <= kDirTol) return false;

  if (cert.kind == Certificate::Kind::DualStrongInfeasibility) {
    cert.rec_f = f.recession(cert.direction).value;
    cert.rec_g = g.recession(cert.direction).value;
    cert.method = "recession";
    double sum = cert.rec_f + cert.rec_g;
    if (std::isfinite(sum) && sum < 0.0) {
      cert.margin = -sum;
      cert.valid = true;
    }
    return cert.valid;
  }

  // primal strong infeasibility: rec f*(d') + rec g*(-d') equals
  // sigma_{dom f}(d') + sigma_{dom g}(-d') when closed forms exist
  auto sf = support_value(f.domain(), cert.direction);
  auto sg = support_value(g.domain(), -cert.direction);
  if (sf && sg) {
    cert.rec_f = *sf;
    cert.rec_g = *sg;
    cert.method = "recession";
    double sum = *sf + *sg;
    if (std::isfinite(sum) && sum < 0.0) {
      cert.margin = -sum;
      cert.valid = true;
    }
    return cert.valid;
  }

  // fallback: compare against the alternating-projection domain gap
  cert.rec_f = kInf;
  cert.rec_g = kInf;
  cert.method = "domain-distance";
  GapResult gap = dual_improving_direction(f, g);
  double tol = 1e-6 * (1.0 + gap.distance);
  if (gap.converged && norm(cert.direction) <= gap.distance + tol &&
      dist(cert.direction, gap.direction) <= tol) {
    cert.margin = gap.distance;
    cert.valid = true;
  }
  return cert.valid;
}

Diagnosis classify(const FunctionSpec& f, const FunctionSpec& g, const DrsTrace& trace,
                   const IdvEstimate& idv, const std::optional<GroundTruth>& gt) {
  Diagnosis d;
  d.idv = idv;
  d.objective = objective_stats(trace);

  const std::size_t w = trace.window();
  const auto& dz = trace.dz_norms;
  double tail_sum = 0.0;
  for (std::size_t i = dz.size() - w; i < dz.size(); ++i) tail_sum += dz[i];
  d.displacement_tail_mean = tail_sum / static_cast<double>(w);
  d.displacement_final = dz.back();

  const auto& ss = trace.shadow_step_norms;
  for (std::size_t i = (ss.size() > w ? ss.size() - w : 0); i < ss.size(); ++i) {
    d.shadow_step_tail_max = std::max(d.shadow_step_tail_max, ss[i]);
  }

  // shadow-iterate convergence heuristic: bounded norms and a settling tail
  const auto& xn = trace.x_half_norms;
  double head = 0.0;
  std::size_t nh = std::min<std::size_t>(100, xn.size());
  for (std::size_t i = 0; i < nh; ++i) head += xn[i];
  head /= static_cast<double>(nh);
  double tail = 0.0;
  for (std::size_t i = xn.size() - std::min(w, xn.size()); i < xn.size(); ++i) tail += xn[i];
  tail /= static_cast<double>(std::min(w, xn.size()));
  double shadow_disp = dist(trace.x_half_final, trace.x_half_at_tail_start);
  d.shadow_iterates_convergent =
      trace.converged || (tail <= 8.0 * std::max(1.0, head) && shadow_disp <= 0.05);

  d.evidence.push_back("displacement tail mean " + fmt(d.displacement_tail_mean));
  d.evidence.push_back("running mean " + fmt(d.objective.running_mean_final) +
                       ", tail mean " + fmt(d.objective.mean_over_tail));

  // exact direction oracles
  Certificate dual_cert;
  dual_cert.kind = Certificate::Kind::DualStrongInfeasibility;
  dual_cert.direction = improving_direction(f, g);
  check_certificate(dual_cert, f, g);
  GapResult gap = dual_improving_direction(f, g);
  Certificate primal_cert;
  primal_cert.kind = Certificate::Kind::PrimalStrongInfeasibility;
  primal_cert.direction = gap.direction;
  if (gap.converged) check_certificate(primal_cert, f, g);

  FeasStatus ps = gt ? gt->primal
                     : (primal_cert.valid ? FeasStatus::StronglyInfeasible : FeasStatus::Feasible);
  FeasStatus ds = gt ? gt->dual
                     : (dual_cert.valid ? FeasStatus::StronglyInfeasible : FeasStatus::Feasible);
  d.v_analytic = analytic_idv(f, g, trace.gamma, ps, ds);

  if (trace.converged) {
    d.label = CaseLabel::A;
    d.observed_limit = trace.objective.back();
    d.evidence.push_back("fixed point reached at k=" + std::to_string(trace.iterations));
    return d;
  }

  if (gt && gt->d_star < gt->p_star) {
    d.label = CaseLabel::G;
    d.observed_limit = d.objective.mean_over_tail;
    d.evidence.push_back("ground truth d*=" + fmt(gt->d_star) + " < p*=" + fmt(gt->p_star));
    d.evidence.push_back("observed objective limit " + fmt(*d.observed_limit));
    return d;
  }

  if (dual_cert.valid && primal_cert.valid) {
    d.label = CaseLabel::Undetermined;
    d.caveat = "both strong-infeasibility certificates validated; outside the taxonomy corollaries";
    return d;
  }

  if (dual_cert.valid) {
    double dn = norm(dual_cert.direction);
    double expected_slope = -trace.gamma * dn * dn;
    d.certificate = dual_cert;
    d.evidence.push_back("improving direction with margin " + fmt(dual_cert.margin));
    d.evidence.push_back("objective slope " + fmt(d.objective.slope_tail) + " vs -gamma||d||^2 = " +
                         fmt(expected_slope));
    if (std::abs(d.objective.slope_tail - expected_slope) <=
        std::max(1e-6, 0.02 * std::abs(expected_slope))) {
      d.label = CaseLabel::E;
    } else {
      d.label = CaseLabel::Undetermined;
      d.caveat = "certified improving direction but the objective slope disagrees";
    }
    return d;
  }

  if (primal_cert.valid) {
    double vn = norm(primal_cert.direction);
    d.certificate = primal_cert;
    d.evidence.push_back("domain gap " + fmt(gap.distance));
    if (std::abs(d.displacement_tail_mean - vn) <= std::max(1e-3, 0.02 * vn)) {
      d.label = CaseLabel::F;
      d.evidence.push_back("||dz|| tail matches ||v|| = " + fmt(vn));
    } else {
      d.label = CaseLabel::Undetermined;
      d.caveat = "primal certificate validated but the displacement limit disagrees";
    }
    return d;
  }

  // v = 0 from here on
  auto means = running_mean(trace.objective);
  if (d.objective.all_infinite) {
    d.label = CaseLabel::Undetermined;
    d.caveat = "never jointly feasible at sample points";
    return d;
  }
  double m_final = means.back();
  double m_delta = m_final - means[trace.tail_start];

  if (m_final <= -kLevelUnbounded && m_delta <= -kTrendTol) {
    d.label = CaseLabel::D;
    d.evidence.push_back("running mean decreasing without bound (tail change " + fmt(m_delta) + ")");
    return d;
  }
  if (m_final >= kLevelUnbounded && m_delta >= kTrendTol) {
    d.label = CaseLabel::F;
    d.caveat = "weak infeasibility: objective diverges upward, displacement vanishes, no certificate";
    d.evidence.push_back("running mean increasing without bound (tail change " + fmt(m_delta) + ")");
    return d;
  }
  if (std::abs(m_delta) <= kTrendTol * (1.0 + std::abs(m_final))) {
    d.observed_limit = d.objective.mean_over_tail;
    if (gt && (gt->label == CaseLabel::A || gt->label == CaseLabel::B || gt->label == CaseLabel::C)) {
      d.label = gt->label;
      d.evidence.push_back("finite objective limit; label settled by ground truth");
      return d;
    }
    if (d.shadow_iterates_convergent) {
      d.label = CaseLabel::B;
      d.b_or_a_boundary = true;
      d.caveat =
          "shadow iterates appear convergent; cases a and b are indistinguishable from finite "
          "data, and if the shadow iterates converge their limit is a solution";
    } else {
      d.label = CaseLabel::C;
      d.evidence.push_back("shadow iterates flagged nonconvergent");
    }
    return d;
  }

  d.label = CaseLabel::Undetermined;
  d.caveat = "objective statistics settled in no recognized pattern";
  return d;
}

}  // namespace drsdiag
