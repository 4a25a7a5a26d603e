#include <benchmark/benchmark.h>

#include "evacsim/engine.hpp"

using namespace evacsim;

namespace {

void BM_BuildGrid(benchmark::State& state) {
    const MapSpec map = bundled_map();
    const CapacityPolicy policy;
    for (auto _ : state) {
        PatchGrid grid = build_grid(map, policy);
        benchmark::DoNotOptimize(grid.combined_distance.data());
    }
}
BENCHMARK(BM_BuildGrid)->Unit(benchmark::kMillisecond);

void BM_Spawn(benchmark::State& state) {
    ScenarioConfig config;
    config.population = state.range(0);
    for (auto _ : state) {
        SimState sim = init_run(config, 1);
        benchmark::DoNotOptimize(sim.agents.data());
    }
}
BENCHMARK(BM_Spawn)->Arg(3000)->Arg(30000)->Unit(benchmark::kMillisecond);

// Steady-state tick cost shortly after the alarm, when the whole crowd moves.
void BM_Tick(benchmark::State& state) {
    ScenarioConfig config;
    config.population = state.range(0);
    config.alarm_tick = 0;
    SimState sim = init_run(config, 2);
    for (int i = 0; i < 20; ++i) tick(sim);
    for (auto _ : state) {
        tick(sim);
        benchmark::DoNotOptimize(sim.evacuated);
        if (sim.inside_count() - sim.fatal_in_place == 0) {
            state.SkipWithError("crowd evacuated mid-benchmark, raise the population");
            break;
        }
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Tick)->Arg(3000)->Arg(30000)->Unit(benchmark::kMillisecond);

void BM_DeskRun(benchmark::State& state) {
    ScenarioConfig config;
    config.population = 1000;
    for (auto _ : state) {
        const RunResult result = simulate(config, 3);
        benchmark::DoNotOptimize(result.ticks);
    }
}
BENCHMARK(BM_DeskRun)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
