#include <doctest.h>

#include <set>

#include "drsdiag/json_io.hpp"
#include "drsdiag/zoo.hpp"
#include "oracles.hpp"

using namespace drsdiag;

TEST_SUITE_BEGIN("zoo");

TEST_CASE("the catalog carries every canonical entry") {
  const auto& zoo = catalog();
  CHECK(zoo.size() >= 12);
  std::set<std::string> ids;
  for (const auto& e : zoo) ids.insert(e.id);
  for (const char* id :
       {"case-a", "case-b", "case-c", "case-d", "case-e", "case-f", "sd-fail-soc",
        "sd-fail-bertsekas", "sd-fail-drusvyatskiy", "sd-fail-ye", "sd-fail-tuncel", "admm-a",
        "admm-d"}) {
    CHECK(ids.count(id) == 1);
  }
  CHECK(find_entry("no-such-entry") == nullptr);
}

TEST_CASE("ground truths satisfy weak duality and their case patterns") {
  for (const auto& e : catalog()) {
    CHECK(e.truth.d_star <= e.truth.p_star);
    CHECK_NOTHROW(e.truth.validate());
    CHECK(e.truth.p_minus == e.truth.d_star);
  }
}

TEST_CASE("every splitting entry is prox-resolvable at load") {
  testing_oracles::Rng rng(29);
  for (const auto& e : catalog()) {
    if (e.is_admm()) continue;
    const auto& p = e.drs();
    CHECK_NOTHROW(p.f.validate());
    CHECK_NOTHROW(p.g.validate());
    for (int i = 0; i < 5; ++i) {
      Vec z = rng.vec(p.f.dim());
      CHECK(p.f.prox(1.0, z).all_finite());
      CHECK(p.g.prox(1.0, z).all_finite());
    }
    CHECK(p.f.eval(p.f.domain_witness(), kFeasTol) < kInf);
    CHECK(p.g.eval(p.g.domain_witness(), kFeasTol) < kInf);
  }
}

TEST_CASE("known ground-truth values match their sources") {
  CHECK(find_entry("case-a")->truth.p_star == 1.0);
  CHECK(find_entry("case-b")->truth.p_star == 0.0);
  CHECK(find_entry("case-e")->truth.known_direction.has_value());
  CHECK((*find_entry("case-e")->truth.known_direction)[0] == -2.0);
  CHECK(find_entry("sd-fail-bertsekas")->truth.p_star == 1.0);
  CHECK(find_entry("sd-fail-bertsekas")->truth.d_star == 0.0);
  CHECK(find_entry("sd-fail-drusvyatskiy")->truth.gamma_threshold == 0.5);
  CHECK(find_entry("sd-fail-ye")->truth.d_star == -2.0);
  CHECK(find_entry("sd-fail-tuncel")->truth.p_star ==
        doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0));
}

TEST_CASE("entries survive the JSON problem format round trip") {
  testing_oracles::Rng rng(37);
  for (const auto& e : catalog()) {
    if (e.is_admm()) {
      json j = to_json(e.admm());
      ParsedProblem back = problem_from_json(j);
      const auto& p = std::get<AdmmProblem>(back.problem);
      AdmmState s0 = admm_initial_state(e.admm(), 1.0, {});
      AdmmState a = admm_step(s0, e.admm());
      AdmmState b = admm_step(s0, p);
      CHECK(dist(a.x, b.x) == 0.0);
      CHECK(dist(a.y, b.y) == 0.0);
      CHECK(dist(a.nu, b.nu) == 0.0);
    } else {
      json j = to_json(e.drs());
      ParsedProblem back = problem_from_json(j);
      const auto& p = std::get<DrsPair>(back.problem);
      Vec z = rng.vec(p.f.dim());
      CHECK(dist(p.f.prox(1.0, z), e.drs().f.prox(1.0, z)) == 0.0);
      CHECK(dist(p.g.prox(1.0, z), e.drs().g.prox(1.0, z)) == 0.0);
    }
  }
}

TEST_SUITE_END();
