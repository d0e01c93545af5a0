#include <benchmark/benchmark.h>

#include "drsdiag/admm.hpp"
#include "drsdiag/drs.hpp"
#include "drsdiag/zoo.hpp"

using namespace drsdiag;

static void BM_ProxNegLog(benchmark::State& state) {
  FunctionSpec f = FunctionSpec::zero(1).with_atom({AtomKind::NegLog, 0});
  Vec z{-1.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.prox(1.0, z));
  }
}
BENCHMARK(BM_ProxNegLog);

static void BM_ProxInvSqrtNeg(benchmark::State& state) {
  FunctionSpec f = FunctionSpec::zero(1).with_atom({AtomKind::InvSqrtNeg, 0});
  Vec z{2.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.prox(1.0, z));
  }
}
BENCHMARK(BM_ProxInvSqrtNeg);

static void BM_ProxExpPair(benchmark::State& state) {
  FunctionSpec f = FunctionSpec::zero(2).with_atom({AtomKind::ExpNegSqrtProd, 0, 1});
  Vec z{1.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.prox(0.5, z));
  }
}
BENCHMARK(BM_ProxExpPair);

static void BM_Eigh(benchmark::State& state) {
  const std::size_t n = state.range(0);
  SymMat m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) m.set(i, j, 1.0 / (1.0 + i + j));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigh(m));
  }
}
BENCHMARK(BM_Eigh)->Arg(3)->Arg(5)->Arg(8);

static void BM_ProjectSoc(benchmark::State& state) {
  SetSpec soc = SetSpec::soc(3, {0, 1, 2}, {0.0, 0.0, 1.0});
  Vec z{1.0, -2.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(project(soc, z));
  }
}
BENCHMARK(BM_ProjectSoc);

static void BM_DrsStepSoc(benchmark::State& state) {
  const auto& p = find_entry("sd-fail-soc")->drs();
  DrsState s{Vec{1.0, 1.0, 0.0}, Vec(3), Vec(3), 0, 1.0};
  for (auto _ : state) {
    s = drs_step(s, p.f, p.g);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_DrsStepSoc);

static void BM_DrsStepSdp(benchmark::State& state) {
  const char* id = state.range(0) == 3 ? "sd-fail-drusvyatskiy" : "sd-fail-tuncel";
  const auto& p = find_entry(id)->drs();
  DrsState s{Vec::zeros(p.f.dim()), Vec(p.f.dim()), Vec(p.f.dim()), 0, 1.0};
  for (auto _ : state) {
    s = drs_step(s, p.f, p.g);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_DrsStepSdp)->Arg(3)->Arg(5);

static void BM_AdmmStep(benchmark::State& state) {
  const auto& prob = find_entry("admm-a")->admm();
  AdmmState s = admm_initial_state(prob, 1.0, {});
  for (auto _ : state) {
    s = admm_step(s, prob);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_AdmmStep);

BENCHMARK_MAIN();
