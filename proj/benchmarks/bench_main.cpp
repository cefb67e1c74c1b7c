#include <benchmark/benchmark.h>

#include "tilekit/clock.hpp"
#include "tilekit/grid_solver.hpp"
#include "tilekit/line_solver.hpp"
#include "tilekit/variants.hpp"

using namespace tilekit;

namespace {

TilingInstance checkerboard() {
  RuleSet r = RuleSet::allForbidden({"t1", "t2"});
  r.h(0, 1) = r.h(1, 0) = 0;
  r.v(0, 1) = r.v(1, 0) = 0;
  return {r, BoundaryCondition::fourCorners(0), {}};
}

void BM_SolveGridDP(benchmark::State& state) {
  auto inst = fixture("weighted-open").instance;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto res = solveGrid(*inst, n, SolveMode::MinCost);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_SolveGridDP)->Arg(4)->Arg(5);

void BM_SolveGridCount(benchmark::State& state) {
  auto inst = checkerboard();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto res = solveGrid(inst, n, SolveMode::Count);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_SolveGridCount)->Arg(4)->Arg(8)->Arg(12);

void BM_BruteForce3x3(benchmark::State& state) {
  auto inst = fixture("weighted-periodic").instance;
  for (auto _ : state) {
    auto res = bruteForceGrid(*inst, 3);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_BruteForce3x3);

// the polylog contract: runtime flat across ten orders of magnitude of N
void BM_LineHugeN(benchmark::State& state) {
  RuleSet r = RuleSet::allForbidden({"a", "b", "c"});
  r.h(0, 1) = r.h(1, 0) = 0;
  r.h(1, 2) = r.h(2, 0) = 1;
  BigInt n = BigInt(10);
  for (int k = 1; k < state.range(0); ++k) n *= 10;
  n += 3;
  for (auto _ : state) {
    auto res = solveLine(r, 0, 0, n, SolveMode::MinCost);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_LineHugeN)->Arg(3)->Arg(8)->Arg(13);

void BM_ClockSequence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto seq = clockSequence(n);
    benchmark::DoNotOptimize(seq);
  }
}
BENCHMARK(BM_ClockSequence)->Arg(6)->Arg(10);

void BM_HamiltonianWellFormed(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto h = buildHamiltonian(n, Sector::BracketedWellFormed);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_HamiltonianWellFormed)->Arg(5)->Arg(6);

void BM_RowPairMinimum(benchmark::State& state) {
  auto rules = fixture("reflection-weighted-L1").instance->rules;
  int vT = rules.indexOf("V"), cT = rules.indexOf("C");
  for (auto _ : state) {
    auto res = rowPairMinimum(rules, vT, cT, RowPairMode::WPrime, RowPairEnds::Free,
                              static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_RowPairMinimum)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
