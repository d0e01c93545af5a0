#include "drsdiag/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "drsdiag/admm.hpp"
#include "drsdiag/drs.hpp"
#include "drsdiag/errors.hpp"
#include "drsdiag/pathology.hpp"
#include "drsdiag/zoo.hpp"

namespace drsdiag::acceptance {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(8);
  os << v;
  return os.str();
}

struct Recorder {
  CriterionResult* r;
  bool check(bool ok, const std::string& text) {
    r->details.push_back(std::string(ok ? "ok   " : "FAIL ") + text);
    if (!ok) r->passed = false;
    return ok;
  }
  void deviation(const std::string& text) { r->deviations.push_back(text); }
};

const DrsPair& drs_entry(const std::string& id) { return find_entry(id)->drs(); }

DrsTrace run_entry(const std::string& id, double gamma, std::size_t iters) {
  const auto& p = drs_entry(id);
  return run(p.f, p.g, gamma, Vec::zeros(p.f.dim()), iters);
}

double dz_tail_max(const DrsTrace& t) {
  double m = 0.0;
  for (std::size_t i = t.dz_norms.size() - t.window(); i < t.dz_norms.size(); ++i) {
    m = std::max(m, t.dz_norms[i]);
  }
  return m;
}

// --- criterion 1: total duality -------------------------------------------

CriterionResult c1() {
  CriterionResult r{1, criterion_name(1), true, {}, {}};
  Recorder rec{&r};
  auto t0 = std::chrono::steady_clock::now();
  DrsTrace t = run_entry("case-a", 1.0, 200000);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rec.check(t.converged, "run reaches a fixed point (k=" + std::to_string(t.iterations) + ")");
  rec.check(std::abs(t.x_half_final[0] - 1.0) <= 1e-6,
            "x half-iterate converges to 1 (got " + fmt(t.x_half_final[0]) + ")");
  rec.check(std::abs(t.objective.back() - 1.0) <= 1e-6,
            "objective converges to 1 (got " + fmt(t.objective.back()) + ")");
  rec.check(secs < 1.0, "runtime below 1 s (" + fmt(secs) + " s)");
  return r;
}

// --- criterion 2: primal solution, no dual solution ------------------------

CriterionResult c2() {
  CriterionResult r{2, criterion_name(2), true, {}, {}};
  Recorder rec{&r};
  DrsTrace t = run_entry("case-b", 1.0, 100000);
  auto st = objective_stats(t);
  rec.check(dz_tail_max(t) <= 1e-3,
            "||x^{k+1}-x^{k+1/2}|| tail <= 1e-3 (got " + fmt(dz_tail_max(t)) + ")");
  rec.check(std::abs(st.running_mean_final) <= 1e-2,
            "objective running mean within 1e-2 of 0 (got " + fmt(st.running_mean_final) + ")");
  return r;
}

// --- criterion 3: no primal solution / value -inf ---------------------------

bool shadow_nonconvergent(const DrsTrace& t) {
  // tail shadow-step norm bounded away from 0, or the iterate norm diverging
  double ss_tail = 0.0;
  const auto& ss = t.shadow_step_norms;
  for (std::size_t i = (ss.size() > t.window() ? ss.size() - t.window() : 0); i < ss.size(); ++i) {
    ss_tail = std::max(ss_tail, ss[i]);
  }
  const auto& xn = t.x_half_norms;
  double head = 0.0;
  std::size_t nh = std::min<std::size_t>(100, xn.size());
  for (std::size_t i = 0; i < nh; ++i) head += xn[i];
  head /= static_cast<double>(nh);
  double tail = 0.0;
  for (std::size_t i = xn.size() - std::min(t.window(), xn.size()); i < xn.size(); ++i) {
    tail += xn[i];
  }
  tail /= static_cast<double>(std::min(t.window(), xn.size()));
  return ss_tail > 1e-3 || tail > 8.0 * std::max(1.0, head);
}

CriterionResult c3() {
  CriterionResult r{3, criterion_name(3), true, {}, {}};
  Recorder rec{&r};
  {
    DrsTrace t = run_entry("case-c", 1.0, 100000);
    auto st = objective_stats(t);
    rec.check(dz_tail_max(t) <= 1e-2,
              "case-c displacement tail <= 1e-2 (got " + fmt(dz_tail_max(t)) + ")");
    rec.check(std::abs(st.running_mean_final - 0.0) <= 1e-2,
              "case-c running mean within 1e-2 of p* = 0 (got " + fmt(st.running_mean_final) +
                  ")");
    rec.check(shadow_nonconvergent(t), "case-c shadow iterates flagged nonconvergent");
  }
  {
    DrsTrace t = run_entry("case-d", 1.0, 100000);
    auto means = running_mean(t.objective);
    bool monotone = true;
    for (std::size_t i = 1; i < means.size(); ++i) {
      if (means[i] > means[i - 1] + 1e-12) monotone = false;
    }
    rec.check(dz_tail_max(t) <= 1e-2,
              "case-d displacement tail <= 1e-2 (got " + fmt(dz_tail_max(t)) + ")");
    rec.check(monotone && means.back() < -10.0,
              "case-d running mean decreases monotonically below -10 (got " + fmt(means.back()) +
                  ")");
    rec.check(shadow_nonconvergent(t), "case-d shadow iterates flagged nonconvergent");
  }
  return r;
}

// --- criterion 4: improving direction --------------------------------------

CriterionResult c4() {
  CriterionResult r{4, criterion_name(4), true, {}, {}};
  Recorder rec{&r};
  const auto& p = drs_entry("case-e");
  for (double gamma : {0.25, 1.0, 4.0}) {
    DrsTrace t = run(p.f, p.g, gamma, Vec::zeros(1), 2000);
    double worst = 0.0;
    for (double dn : t.dz_norms) worst = std::max(worst, std::abs(dn - 2.0 * gamma));
    rec.check(worst <= 1e-10, "gamma=" + fmt(gamma) +
                                  ": displacement equals -2 gamma to 1e-10 (err " + fmt(worst) +
                                  ")");
    IdvEstimate idv = estimate_idv(t);
    rec.check(idv.agreement <= 1e-8, "gamma=" + fmt(gamma) +
                                         ": estimator agreement <= 1e-8 (got " +
                                         fmt(idv.agreement) + ")");
    Certificate cert;
    cert.kind = Certificate::Kind::DualStrongInfeasibility;
    cert.direction = gamma * improving_direction(p.f, p.g);
    bool ok = check_certificate(cert, p.f, p.g);
    rec.check(ok && std::abs(cert.margin - 4.0 * gamma) <= 1e-9,
              "gamma=" + fmt(gamma) + ": certificate margin 4 gamma (got " + fmt(cert.margin) +
                  ")");
    auto st = objective_stats(t);
    rec.check(std::abs(st.slope_tail - (-4.0 * gamma)) <= 1e-6,
              "gamma=" + fmt(gamma) + ": objective slope within 1e-6 of -4 gamma (got " +
                  fmt(st.slope_tail) + ")");
  }
  return r;
}

// --- criterion 5: weak infeasibility ----------------------------------------

CriterionResult c5() {
  CriterionResult r{5, criterion_name(5), true, {}, {}};
  Recorder rec{&r};
  DrsTrace t = run_entry("case-f", 1.0, 100000);
  rec.check(dz_tail_max(t) <= 1e-2,
            "||x^{k+1}-x^{k+1/2}|| tail <= 1e-2 toward dist = 0 (got " + fmt(dz_tail_max(t)) +
                ")");
  return r;
}

// --- criterion 6: strong infeasibility via the ADMM reduction ---------------

CriterionResult c6() {
  CriterionResult r{6, criterion_name(6), true, {}, {}};
  Recorder rec{&r};
  ReducedPair rp = reduce_to_drs(find_entry("admm-d")->admm());
  std::vector<Vec> vs;
  for (double gamma : {0.5, 1.0, 2.0}) {
    DrsTrace t = run(rp.f_tilde, rp.g_tilde, gamma, Vec::zeros(1), 5000);
    double err = 0.0;
    for (std::size_t i = t.dz_norms.size() - t.window(); i < t.dz_norms.size(); ++i) {
      err = std::max(err, std::abs(t.dz_norms[i] - 1.0));
    }
    rec.check(err <= 1e-3,
              "gamma=" + fmt(gamma) + ": ||dz|| tail within 1e-3 of 1 (err " + fmt(err) + ")");
    vs.push_back(estimate_idv(t).v_from_diff);
  }
  double spread = 0.0;
  for (const auto& a : vs) {
    for (const auto& b : vs) spread = std::max(spread, dist(a, b));
  }
  rec.check(spread <= 1e-8, "estimated v identical across gammas (spread " + fmt(spread) + ")");
  return r;
}

// --- criterion 7: the analytical cone example --------------------------------

CriterionResult c7() {
  CriterionResult r{7, criterion_name(7), true, {}, {}};
  Recorder rec{&r};
  const auto& p = drs_entry("sd-fail-soc");
  const double gamma = 1.0;

  DrsState s{Vec{1.0, 1.0, 0.0}, Vec(3), Vec(3), 0, gamma};
  double z1 = 1.0, z2 = 1.0, recursion_err = 0.0;
  for (int k = 0; k < 50; ++k) {
    s = drs_step(s, p.f, p.g);
    double rad = std::sqrt(z1 * z1 + z2 * z2);
    z1 = 0.5 * z1 - gamma;
    z2 = 0.5 * z2 + 0.5 * rad;
    recursion_err = std::max(
        {recursion_err, std::abs(s.z[0] - z1), std::abs(s.z[1] - z2), std::abs(s.z[2])});
  }
  rec.check(recursion_err <= 1e-12,
            "iterates match z1 <- z1/2 - gamma closed form for 50 steps (err " +
                fmt(recursion_err) + ")");

  DrsTrace t = run(p.f, p.g, gamma, Vec{1.0, 1.0, 0.0}, 10000);
  auto st = objective_stats(t);
  rec.check(std::abs(st.mean_over_tail - (-2.0 * gamma)) <= 1e-3,
            "objective limit -2 gamma within 1e-3 at k=1e4 (got " + fmt(st.mean_over_tail) + ")");
  rec.check(std::abs(t.x_half_final[0] - (-2.0 * gamma)) <= 1e-3,
            "x1 half-iterate tends to -2 gamma within 1e-3 (got " + fmt(t.x_half_final[0]) + ")");
  return r;
}

// --- criterion 8: duality-gap SDP thresholds ---------------------------------

CriterionResult c8() {
  CriterionResult r{8, criterion_name(8), true, {}, {}};
  Recorder rec{&r};
  struct Sdp {
    const char* id;
    std::vector<double> at_or_above;  // limits should match d*
    std::vector<double> below;        // limits strictly inside (d*, p*)
  };
  const std::vector<Sdp> plan = {
      {"sd-fail-drusvyatskiy", {0.5, 1.0}, {0.1, 0.25}},
      {"sd-fail-ye", {1.0, 2.0}, {0.25, 0.5}},
      {"sd-fail-tuncel", {0.8, 1.6}, {0.2, 0.4}},
  };
  for (const auto& sdp : plan) {
    const ZooEntry* e = find_entry(sdp.id);
    const double d_star = e->truth.d_star, p_star = e->truth.p_star;
    auto observe = [&](double gamma) {
      DrsTrace t = run_entry(sdp.id, gamma, 200000);
      auto st = objective_stats(t);
      rec.check(st.min_over_tail <= p_star - 0.05,
                std::string(sdp.id) + " gamma=" + fmt(gamma) +
                    ": running min <= p* - 0.05 (got " + fmt(st.min_over_tail) + ")");
      return st.mean_over_tail;
    };
    for (double gamma : sdp.at_or_above) {
      double limit = observe(gamma);
      if (std::abs(limit - d_star) > 0.05) {
        rec.deviation(std::string(sdp.id) + " gamma=" + fmt(gamma) + ": limit " + fmt(limit) +
                      " not within 0.05 of d* = " + fmt(d_star));
      } else {
        r.details.push_back("ok   " + std::string(sdp.id) + " gamma=" + fmt(gamma) + ": limit " +
                            fmt(limit) + " matches d*");
      }
    }
    for (double gamma : sdp.below) {
      double limit = observe(gamma);
      if (!(limit > d_star + 0.05 && limit < p_star - 0.05)) {
        rec.deviation(std::string(sdp.id) + " gamma=" + fmt(gamma) + ": limit " + fmt(limit) +
                      " not strictly inside (d* + 0.05, p* - 0.05)");
      } else {
        r.details.push_back("ok   " + std::string(sdp.id) + " gamma=" + fmt(gamma) + ": limit " +
                            fmt(limit) + " strictly inside the gap");
      }
    }
  }
  return r;
}

// --- criterion 9: always-on property suites ----------------------------------

double golden_min_1d(const std::function<double(double)>& h, double lo, double hi) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  for (int it = 0; it < 200; ++it) {
    if (h(c) < h(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - phi * (b - a);
    d = a + phi * (b - a);
  }
  return 0.5 * (a + b);
}

CriterionResult c9() {
  CriterionResult r{9, criterion_name(9), true, {}, {}};
  Recorder rec{&r};
  std::mt19937_64 rng(20240917);
  std::normal_distribution<double> gauss(0.0, 2.0);
  auto rand_vec = [&](std::size_t n) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = gauss(rng);
    return v;
  };

  // Moreau identity residuals
  {
    double worst = 0.0;
    for (const auto& e : catalog()) {
      if (e.is_admm()) continue;
      for (const FunctionSpec* h : {&e.drs().f, &e.drs().g}) {
        for (double gamma : {0.5, 2.0}) {
          for (int i = 0; i < 20; ++i) {
            auto res = h->moreau_residual(rand_vec(h->dim()), gamma);
            if (res) worst = std::max(worst, *res);
          }
        }
      }
    }
    rec.check(worst <= 1e-10, "Moreau residuals <= 1e-10 (worst " + fmt(worst) + ")");
  }

  // firm nonexpansiveness of every zoo prox, 1000 random pairs each
  {
    double worst = -kInf;
    for (const auto& e : catalog()) {
      if (e.is_admm()) continue;
      for (const FunctionSpec* h : {&e.drs().f, &e.drs().g}) {
        for (int i = 0; i < 1000; ++i) {
          Vec z = rand_vec(h->dim()), zp = rand_vec(h->dim());
          Vec dp = h->prox(1.0, z) - h->prox(1.0, zp);
          worst = std::max(worst, dot(dp, dp) - dot(z - zp, dp));
        }
      }
    }
    rec.check(worst <= 1e-10,
              "firm nonexpansiveness on 1000 random pairs per prox (worst violation " +
                  fmt(worst) + ")");
  }

  // displacement monotonicity on every zoo splitting run
  {
    double worst = -kInf;
    for (const auto& e : catalog()) {
      if (e.is_admm()) continue;
      DrsTrace t = run_entry(e.id, 1.0, 10000);
      for (std::size_t k = 1; k < t.dz_norms.size(); ++k) {
        worst = std::max(worst, t.dz_norms[k] - t.dz_norms[k - 1]);
      }
    }
    rec.check(worst <= 1e-12,
              "displacement norms nonincreasing on every zoo run (worst increase " + fmt(worst) +
                  ")");
  }

  // eigensolver reconstruction on random symmetric matrices
  {
    std::uniform_int_distribution<std::size_t> ord(2, 8);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      std::size_t n = ord(rng);
      SymMat m(n);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b <= a; ++b) m.set(a, b, gauss(rng));
      }
      EigDecomp d = eigh(m);
      double err = 0.0, orth = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          double rebuilt = 0.0, qq = 0.0;
          for (std::size_t k = 0; k < n; ++k) {
            rebuilt += d.eigenvalues[k] * d.eigenvectors(a, k) * d.eigenvectors(b, k);
            qq += d.eigenvectors(k, a) * d.eigenvectors(k, b);
          }
          err += (rebuilt - m(a, b)) * (rebuilt - m(a, b));
          orth += (qq - (a == b ? 1.0 : 0.0)) * (qq - (a == b ? 1.0 : 0.0));
        }
      }
      double rel = std::sqrt(err) / std::max(1.0, m.frobenius_norm());
      worst = std::max({worst, rel, std::sqrt(orth)});
    }
    rec.check(worst <= 1e-12,
              "eigh reconstruction/orthonormality <= 1e-12 (worst " + fmt(worst) + ")");
  }

  // DRS/ADMM iterate equivalence on the reducible instances
  {
    AdmmProblem abs_pair{FunctionSpec::zero(1).with_atom({AtomKind::Abs, 0}),
                         FunctionSpec::zero(1).with_atom({AtomKind::Abs, 0}), Mat::identity(1),
                         Mat::identity(1), Vec{0.0}};
    double worst = std::max({reduction_mismatch(find_entry("admm-a")->admm(), 1.0, 1000),
                             reduction_mismatch(find_entry("admm-d")->admm(), 1.0, 1000),
                             reduction_mismatch(abs_pair, 1.0, 1000)});
    rec.check(worst <= 1e-10,
              "reduced splitting reproduces the constrained iterates over 1000 steps (worst " +
                  fmt(worst) + ")");
  }

  // prox outputs never lose to the brute-force oracles by more than 1e-8
  {
    double worst = -kInf;
    struct Atom1d {
      AtomKind kind;
      double lo, hi;  // oracle search bracket
    };
    for (const auto& [kind, lo, hi] : {Atom1d{AtomKind::NegLog, 1e-9, 60.0},
                                       Atom1d{AtomKind::InvSqrtNeg, -60.0, -1e-9},
                                       Atom1d{AtomKind::Abs, -60.0, 60.0}}) {
      FunctionSpec h = FunctionSpec::zero(1).with_atom({kind, 0});
      for (double z : {-7.3, -1.0, 0.0, 0.4, 3.1, 12.0}) {
        for (double gamma : {0.5, 1.0, 2.0}) {
          double x = h.prox(gamma, Vec{z})[0];
          auto obj = [&](double u) {
            return h.eval(Vec{u}) + (u - z) * (u - z) / (2.0 * gamma);
          };
          double xo = golden_min_1d(obj, lo, hi);
          worst = std::max(worst, obj(x) - obj(xo));
        }
      }
    }
    {
      FunctionSpec h = FunctionSpec::zero(2).with_atom({AtomKind::ExpNegSqrtProd, 0, 1});
      for (Vec z :
           {Vec{1.0, 1.0}, Vec{-0.5, 2.0}, Vec{3.0, 0.2}, Vec{-1.0, -1.0}, Vec{5.0, 5.0}}) {
        for (double gamma : {0.5, 1.0, 2.0}) {
          Vec x = h.prox(gamma, z);
          auto obj = [&](double u, double v) {
            return h.eval(Vec{u, v}) +
                   ((u - z[0]) * (u - z[0]) + (v - z[1]) * (v - z[1])) / (2.0 * gamma);
          };
          double bu = 0.0, bv = 0.0, best = obj(0.0, 0.0);
          for (int a = 0; a <= 200; ++a) {
            for (int b = 0; b <= 200; ++b) {
              double u = 8.0 * a / 200.0, v = 8.0 * b / 200.0;
              if (double val = obj(u, v); val < best) {
                best = val;
                bu = u;
                bv = v;
              }
            }
          }
          for (int round = 0; round < 60; ++round) {
            bu = golden_min_1d([&](double u) { return obj(u, bv); }, std::max(0.0, bu - 0.1),
                               bu + 0.1);
            bv = golden_min_1d([&](double v) { return obj(bu, v); }, std::max(0.0, bv - 0.1),
                               bv + 0.1);
          }
          worst = std::max(worst, obj(x[0], x[1]) - obj(bu, bv));
        }
      }
    }
    rec.check(worst <= 1e-8,
              "prox outputs beat the brute-force oracles up to 1e-8 (worst gap " + fmt(worst) +
                  ")");
  }
  return r;
}

// --- criterion 10: duality-gap detection -------------------------------------

CriterionResult c10() {
  CriterionResult r{10, criterion_name(10), true, {}, {}};
  Recorder rec{&r};
  for (const auto& e : catalog()) {
    if (e.is_admm()) continue;
    const auto& p = e.drs();
    DrsTrace t = run(p.f, p.g, 1.0, Vec::zeros(p.f.dim()), 100000);
    Diagnosis d = classify(p.f, p.g, t, estimate_idv(t), e.truth);
    bool gap_entry = e.truth.d_star < e.truth.p_star;
    if (gap_entry) {
      rec.check(d.label == CaseLabel::G,
                e.id + " classified g (got " + case_label_name(d.label) + ")");
    } else {
      rec.check(d.label != CaseLabel::G,
                e.id + " never classified g (got " + case_label_name(d.label) + ")");
    }
  }
  return r;
}

}  // namespace

std::vector<int> criterion_ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}; }

std::string criterion_name(int id) {
  switch (id) {
    case 1: return "case-a: fixed point, solution and value 1";
    case 2: return "case-b: vanishing displacement, mean objective to p*";
    case 3: return "case-c/case-d: displacement, mean objective, shadow divergence";
    case 4: return "case-e: improving direction, certificate, objective slope";
    case 5: return "case-f: displacement tail reaches dist(dom f, dom g) = 0";
    case 6: return "admm-d reduction: displacement 1, gamma-free v";
    case 7: return "analytical cone example: closed-form recursion and limits";
    case 8: return "duality-gap SDPs: gamma-threshold reproduction";
    case 9: return "property suites: prox, eigh, monotonicity, equivalence";
    case 10: return "classifier outputs g exactly on the duality-gap entries";
  }
  return "unknown criterion";
}

std::vector<std::string> criterion_entries(int id) {
  switch (id) {
    case 1: return {"case-a"};
    case 2: return {"case-b"};
    case 3: return {"case-c", "case-d"};
    case 4: return {"case-e"};
    case 5: return {"case-f"};
    case 6: return {"admm-d"};
    case 7: return {"sd-fail-soc"};
    case 8: return {"sd-fail-drusvyatskiy", "sd-fail-ye", "sd-fail-tuncel"};
    default: return {};
  }
}

CriterionResult run_criterion(int id) {
  switch (id) {
    case 1: return c1();
    case 2: return c2();
    case 3: return c3();
    case 4: return c4();
    case 5: return c5();
    case 6: return c6();
    case 7: return c7();
    case 8: return c8();
    case 9: return c9();
    case 10: return c10();
  }
  throw InputError("unknown acceptance criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_all(const Options& opts) {
  std::vector<CriterionResult> out;
  for (int id : criterion_ids()) {
    if (opts.only_entry) {
      auto entries = criterion_entries(id);
      if (std::find(entries.begin(), entries.end(), *opts.only_entry) == entries.end()) continue;
    }
    CriterionResult r = run_criterion(id);
    if (opts.inject_failure && *opts.inject_failure == id) {
      r.passed = false;
      r.details.push_back("FAIL injected failure (test fixture)");
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool print_table(std::ostream& os, const std::vector<CriterionResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    os << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.name << "\n";
    for (const auto& d : r.details) os << "      " << d << "\n";
    for (const auto& d : r.deviations) os << "      deviation: " << d << "\n";
    if (!r.passed) all = false;
  }
  os << (all ? "all criteria passed\n" : "some criteria failed\n");
  return all;
}

}  // namespace drsdiag::acceptance
