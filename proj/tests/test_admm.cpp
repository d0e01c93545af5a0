#include <doctest.h>

#include <cmath>

#include "drsdiag/admm.hpp"
#include "drsdiag/zoo.hpp"
#include "oracles.hpp"

using namespace drsdiag;

TEST_SUITE_BEGIN("admm");

TEST_CASE("hand-evaluated first step of the scalar l1 pair") {
  const auto& prob = find_entry("admm-a")->admm();
  AdmmState s = admm_initial_state(prob, 1.0, {.y0 = Vec{0.0}, .nu0 = Vec{0.0}});
  AdmmState n = admm_step(s, prob);
  // both solves are scalar soft thresholds of the completed square
  CHECK(n.x[0] == doctest::Approx(0.0));
  CHECK(n.y[0] == doctest::Approx(0.0));
  CHECK(n.nu[0] == doctest::Approx(-1.0));
  CHECK(n.residual[0] == doctest::Approx(-1.0));
}

TEST_CASE("the dual update identity holds exactly") {
  const auto& prob = find_entry("admm-a")->admm();
  AdmmState s = admm_initial_state(prob, 0.5, {});
  for (int k = 0; k < 20; ++k) {
    AdmmState n = admm_step(s, prob);
    Vec lhs = n.nu - s.nu;
    Vec rhs = (1.0 / n.gamma) * n.residual;
    CHECK(lhs[0] == rhs[0]);
    s = n;
  }
}

TEST_CASE("zero objectives with a consistent constraint stay at zero") {
  AdmmProblem prob{FunctionSpec::zero(2), FunctionSpec::zero(2), Mat::identity(2),
                   Mat::identity(2), Vec::zeros(2)};
  prob.validate();
  AdmmTrace t = run_admm(prob, 1.0, {.y0 = Vec::zeros(2), .nu0 = Vec::zeros(2)}, 100);
  CHECK(t.converged);
  CHECK(norm(t.x_final) == 0.0);
  CHECK(norm(t.y_final) == 0.0);
}

TEST_CASE("the l1 transport run settles at residual zero and value one") {
  const auto& prob = find_entry("admm-a")->admm();
  AdmmTrace t = run_admm(prob, 1.0, {}, 10000);
  CHECK(t.converged);
  CHECK(t.residual_norms.back() <= 1e-10);
  CHECK(t.objective.back() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("the infeasible pair drives its residual to the constraint gap") {
  const auto& prob = find_entry("admm-d")->admm();
  AdmmTrace t = run_admm(prob, 1.0, {}, 5000);
  CHECK_FALSE(t.converged);
  CHECK(t.residual_tail_mean() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("the coupled no-solution instance is feasible in the limit but wanders") {
  const auto& prob = find_entry("admm-c")->admm();
  AdmmTrace t = run_admm(prob, 1.0, {}, 100000);
  CHECK(t.residual_tail_mean() <= 1e-3);
  auto st = admm_objective_stats(t);
  CHECK(std::abs(st.running_mean_final) <= 0.05);  // p* = 0, sublinear Cesaro rate
  CHECK_FALSE(t.iterates_convergent());
}

TEST_CASE("constraint elimination reproduces the constrained iterates") {
  SUBCASE("identity blocks with an even objective") {
    AdmmProblem prob{FunctionSpec::zero(1).with_atom({AtomKind::Abs, 0}),
                     FunctionSpec::zero(1).with_atom({AtomKind::Abs, 0}), Mat::identity(1),
                     Mat::identity(1), Vec{0.0}};
    prob.validate();
    ReducedPair rp = reduce_to_drs(prob);
    CHECK(rp.f_tilde.atoms().front().kind == AtomKind::Abs);  // f(-z) = |z|
    CHECK(reduction_mismatch(prob, 1.0, 1000) <= 1e-10);
  }
  SUBCASE("the scalar l1 pair") {
    CHECK(reduction_mismatch(find_entry("admm-a")->admm(), 1.0, 1000) <= 1e-10);
  }
  SUBCASE("inconsistent constraints agree on the residual limit") {
    const auto& prob = find_entry("admm-d")->admm();
    CHECK(reduction_mismatch(prob, 1.0, 1000) <= 1e-10);
    ReducedPair rp = reduce_to_drs(prob);
    DrsTrace t = run(rp.f_tilde, rp.g_tilde, 1.0, Vec::zeros(1), 2000);
    AdmmTrace at = run_admm(prob, 1.0, {}, 2000);
    CHECK(t.dz_norms.back() == doctest::Approx(at.residual_norms.back()).epsilon(1e-10));
  }
  SUBCASE("a reflected cone blocks the elimination but not the direct run") {
    const auto& prob = find_entry("admm-c")->admm();  // f(-z) needs a reflected cone
    CHECK_THROWS_AS(reduce_to_drs(prob), CapabilityError);
    AdmmTrace t = run_admm(prob, 1.0, {}, 100);
    CHECK(t.iterations == 100);
  }
}

TEST_CASE("regularity certification") {
  SUBCASE("l1 blocks with full-range maps hold with witness zero") {
    RegularityReport rep = check_regularity(find_entry("admm-a")->admm());
    CHECK(rep.status == RegularityStatus::Satisfied);
    REQUIRE(rep.witness_f.has_value());
    CHECK(norm(*rep.witness_f) == 0.0);  // 0 is interior to [-1, 1]
  }
  SUBCASE("half-line indicator with a scalar map") {
    RegularityReport rep = check_regularity(find_entry("admm-d")->admm());
    CHECK(rep.status == RegularityStatus::Satisfied);
    REQUIRE(rep.witness_f.has_value());
    CHECK((*rep.witness_f)[0] > 0.0);  // ri dom f* = (0, inf)
  }
  SUBCASE("a zero map needs zero inside the conjugate domain") {
    AdmmProblem prob{FunctionSpec::indicator(SetSpec::halfspace({1.0}, 0.0, {-1.0})),
                     FunctionSpec::zero(1).with_atom({AtomKind::Abs, 0}), Mat(1, 1, {0.0}),
                     Mat(1, 1, {1.0}), Vec{0.0}};
    prob.validate();
    RegularityReport rep = check_regularity(prob);
    CHECK(rep.status == RegularityStatus::Violated);  // ri dom f* = (0, inf), excludes 0
    CHECK_THROWS_AS(run_admm(prob, 1.0, {}, 10), CapabilityError);
  }
}

TEST_CASE("validation rejects unstructured constraint blocks") {
  AdmmProblem bad{FunctionSpec::zero(2), FunctionSpec::zero(2), Mat(2, 2, {1.0, 1.0, 0.0, 1.0}),
                  Mat::identity(2), Vec::zeros(2)};
  CHECK_THROWS_AS(bad.validate(), CapabilityError);
}

TEST_SUITE_END();
