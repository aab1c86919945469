#include <benchmark/benchmark.h>

#include "causalkit/causalkit.hpp"

using namespace causalkit;

namespace {

ScmModel generated_model(std::size_t n_endo) {
  ScmGenConfig config;
  config.graph_config = {n_endo, n_endo, true, 0.5, 0.5};
  config.function_classes = {FunctionClass::linear(), FunctionClass::interaction()};
  Rng rng(1);
  return create_random(1, config, rng).front();
}

void BM_Sample(benchmark::State& state) {
  const auto model = generated_model(static_cast<std::size_t>(state.range(0)));
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(model.sample(rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Sample)->Arg(4)->Arg(16)->Arg(64);

void BM_Parse(benchmark::State& state) {
  const std::string source = "((2.5 * X0) - (0.75 * X1)) + exp(-(X2 ^ 2) / 2) * min(X3, log(1 + abs(X4)))";
  for (auto _ : state) benchmark::DoNotOptimize(parse(source));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(source.size()));
}
BENCHMARK(BM_Parse);

void BM_Evaluate(benchmark::State& state) {
  const auto expr = parse("((2.5 * X0) - (0.75 * X1)) + exp(-(X2 ^ 2) / 2) * min(X3, log(1 + abs(X4)))");
  const Bindings env{{"X0", 0.1}, {"X1", 0.2}, {"X2", 0.3}, {"X3", 0.4}, {"X4", 0.5}};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(expr, env));
}
BENCHMARK(BM_Evaluate);

void BM_GenerateGraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(generate_graph({n, n, true, 0.5, 0.5}, rng));
}
BENCHMARK(BM_GenerateGraph)->Arg(5)->Arg(20)->Arg(80);

void BM_UniqueGraphSet(benchmark::State& state) {
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(generate_unique_graph_set({4, 4, false, 0.5, 0.5}, 30, rng));
}
BENCHMARK(BM_UniqueGraphSet);

void BM_UseCase(benchmark::State& state) {
  for (auto _ : state) {
    Rng rng(5);
    benchmark::DoNotOptimize(run_usecase(UseCaseConfig{}, rng));
  }
}
BENCHMARK(BM_UseCase)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
