// Copyright 2026 The PrivDude Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "privdude/mechanisms.hpp"
#include "privdude/privacy.hpp"
#include "privdude/problems.hpp"
#include "privdude/rng.hpp"
#include "privdude/solver.hpp"

namespace {

using namespace privdude;

SeparableProgram bench_program(std::size_t n, std::size_t k) {
  GenerateParams params;
  params.n = n;
  params.k = k;
  return to_program(generate(ProblemKind::kKnapsack, params, 1));
}

void BM_BestRespondAll(benchmark::State& state) {
  const SeparableProgram program = bench_program(
      static_cast<std::size_t>(state.range(0)), 2);
  const std::vector<double> lambda(2, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_respond_all(program, lambda));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BestRespondAll)->Arg(50)->Arg(500)->Arg(5000);

void BM_SolveRound(benchmark::State& state) {
  const SeparableProgram program = bench_program(50, 2);
  SolveConfig config;
  config.T_override = state.range(0);
  config.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(program, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SolveRound)->Arg(100)->Arg(1000);

void BM_GaussianDraws(benchmark::State& state) {
  RngStream stream(9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_gaussian(1.0, stream));
  }
}
BENCHMARK(BM_GaussianDraws);

void BM_SparseVectorQueries(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    state.PauseTiming();
    SparseVector sv(1.0, 1.0e12, RngStream::derive(seed++, {1}), false);
    state.ResumeTiming();
    for (int q = 0; q < 100; ++q) {
      benchmark::DoNotOptimize(sv.query(static_cast<double>(q)));
    }
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SparseVectorQueries);

void BM_TightDude(benchmark::State& state) {
  GenerateParams params;
  params.n = 12;
  params.k = 1;
  KnapsackInstance inst =
      std::get<KnapsackInstance>(generate(ProblemKind::kKnapsack, params, 2));
  inst.capacities = {1.0e7};  // far above any reserve at epsilon = 1
  const SeparableProgram program = inst.to_program();
  SolveConfig config;
  config.seed = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tightdude(program, config, 1.0));
  }
}
BENCHMARK(BM_TightDude);

}  // namespace

BENCHMARK_MAIN();
