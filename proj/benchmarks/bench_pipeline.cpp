#include <benchmark/benchmark.h>

#include <random>

#include "generators.hpp"
#include "symwcet/symwcet.hpp"

using namespace symwcet;

namespace {

void BM_ParseToFormula(benchmark::State& state) {
  const auto text = serialize_program(testing::synthetic_program(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    const auto f = build_formula(analyze(parse_program(text)));
    benchmark::DoNotOptimize(f.simplified);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ParseToFormula)->RangeMultiplier(2)->Range(125, 2000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_ConcreteGamma(benchmark::State& state) {
  const auto p = testing::synthetic_program(static_cast<std::size_t>(state.range(0)), 0);
  const auto a = analyze(p);
  for (auto _ : state) benchmark::DoNotOptimize(gamma(a.tree, a.lattice));
}
BENCHMARK(BM_ConcreteGamma)->RangeMultiplier(2)->Range(125, 2000)->Unit(benchmark::kMicrosecond);

void BM_Simplify(benchmark::State& state) {
  const auto a = analyze(testing::synthetic_program(1000, static_cast<std::size_t>(state.range(0))));
  const auto raw = raw_formula(a);
  for (auto _ : state) benchmark::DoNotOptimize(simplify(raw, a.lattice));
}
BENCHMARK(BM_Simplify)->Arg(1)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Instantiate(benchmark::State& state) {
  const auto a = analyze(testing::synthetic_program(1000, static_cast<std::size_t>(state.range(0))));
  const auto f = build_formula(a).simplified;
  const Bindings rho{{"n", Cycles{7}}};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(f, rho, a.lattice));
}
BENCHMARK(BM_Instantiate)->Arg(1)->Arg(8)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_RandomFormulaSimplify(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto lat = testing::chain_lattice();
  std::vector<Formula> corpus;
  for (int i = 0; i < 256; ++i) corpus.push_back(testing::random_formula(rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simplify(corpus[i++ % corpus.size()], lat));
}
BENCHMARK(BM_RandomFormulaSimplify)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
