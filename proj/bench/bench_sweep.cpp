#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "qg/gamefile.hpp"
#include "qg/mcr.hpp"
#include "qg/sweep.hpp"

namespace {

using namespace qg;

struct Fixture {
  Arena arena;
  std::vector<VertexId> active;
  ValueVector prev, next;

  explicit Fixture(std::size_t n) : arena(generate({Family::Layered, 50, n, Objective::MCR})) {
    active.resize(arena.num_vertices());
    std::iota(active.begin(), active.end(), VertexId{0});
    prev.assign(arena.num_vertices(), ExtValue(0));
    next = prev;
  }
  SweepSpec spec() const { return {&arena, active, nullptr, cutoff_threshold(arena)}; }
};

template <bool Parallel>
void BM_Sweep(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  const SweepSpec spec = f.spec();
  for (auto _ : state) {
    bool changed = Parallel ? sweep_parallel(spec, f.prev, f.next) : sweep_serial(spec, f.prev, f.next);
    benchmark::DoNotOptimize(changed);
    benchmark::DoNotOptimize(f.next.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.arena.num_edges()));
}

void BM_SolveMcr(benchmark::State& state) {
  Arena a = generate({Family::Layered, 50, static_cast<std::size_t>(state.range(0)), Objective::MCR});
  const Exec exec = state.range(1) ? Exec::Parallel : Exec::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(solve_mcr(a, {false, exec}).values.data());
}

}  // namespace

BENCHMARK(BM_Sweep<false>)->Name("sweep_serial")->RangeMultiplier(10)->Range(1000, 100'000);
BENCHMARK(BM_Sweep<true>)->Name("sweep_parallel")->RangeMultiplier(10)->Range(1000, 100'000);
BENCHMARK(BM_SolveMcr)->Name("solve_mcr/layered")->Args({200, 0})->Args({200, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
