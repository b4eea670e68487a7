// Serial vs parallel outer loops. Arg(0) is the serial path, Arg(1) parallel.

#include <benchmark/benchmark.h>

#include "credal/credal_div.hpp"
#include "credal/duality.hpp"
#include "credal/random.hpp"

namespace {

using namespace credal;

struct Pair {
  CredalSet p;
  CredalSet q;
};

Pair make_pair(std::size_t n, std::size_t k) {
  const SpacePtr s = gen_random_metric_space(11, n);
  return {gen_random_credal(21, n, k, 0.01, s), gen_random_credal(31, n, k, 0.01, s)};
}

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_gkl(benchmark::State& state) {
  const Pair x = make_pair(static_cast<std::size_t>(state.range(1)), 16);
  for (auto _ : state) benchmark::DoNotOptimize(gkl(x.p, x.q, kDefaultTolerance, mode(state)));
}

void BM_directed_tv(benchmark::State& state) {
  const Pair x = make_pair(static_cast<std::size_t>(state.range(1)), 16);
  for (auto _ : state) benchmark::DoNotOptimize(directed_tv(x.p, x.q, mode(state)));
}

void BM_dual_kl(benchmark::State& state) {
  const Pair x = make_pair(static_cast<std::size_t>(state.range(1)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximize_dual_kl(x.p, x.q, kDefaultTolerance, mode(state)));
  }
}

}  // namespace

BENCHMARK(BM_gkl)->ArgsProduct({{0, 1}, {4, 16}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_directed_tv)->ArgsProduct({{0, 1}, {4, 16}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dual_kl)->ArgsProduct({{0, 1}, {4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
