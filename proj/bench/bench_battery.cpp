#include <benchmark/benchmark.h>

#include "realset/arith.hpp"
#include "realset/lab.hpp"

using namespace realset;

namespace {

const RNA& dual6() {
  static const RNA d = dual_set(Base(6));
  return d;
}

const RNA& periodic3() {
  static const RNA s = compile("E y . int(y) & y <= x & x < y + 1/2", Base(3)).rna;
  return s;
}

void BM_member_batch(benchmark::State& state) {
  auto xs = rational_battery(Base(2), Base(3), static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(member_batch(dual6(), xs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_member_batch_serial(benchmark::State& state) {
  auto xs = rational_battery(Base(2), Base(3), static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(member_batch_serial(dual6(), xs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_compare(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(cross_base_compare(periodic3(), dual6(), static_cast<std::size_t>(state.range(0)), 1));
}

void BM_compare_serial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        cross_base_compare_serial(periodic3(), dual6(), static_cast<std::size_t>(state.range(0)), 1));
}

}  // namespace

BENCHMARK(BM_member_batch)->Arg(1000)->Arg(10000)->UseRealTime();
BENCHMARK(BM_member_batch_serial)->Arg(1000)->Arg(10000)->UseRealTime();
BENCHMARK(BM_compare)->Arg(1000)->Arg(10000)->UseRealTime();
BENCHMARK(BM_compare_serial)->Arg(1000)->Arg(10000)->UseRealTime();

BENCHMARK_MAIN();
