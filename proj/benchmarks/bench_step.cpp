#include <benchmark/benchmark.h>

#include "fhp/dynamics.hpp"
#include "fhp/observables.hpp"
#include "fhp/scenario.hpp"

namespace {

fhp::Lattice half_filled(int w, int h, std::uint64_t seed) {
    fhp::SimConfig config;
    config.width = w;
    config.height = h;
    config.seed = seed;
    config.fill = 0.5;
    return fhp::init_lattice(config);
}

void BM_BuildCollisionTable(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fhp::build_collision_table());
}
BENCHMARK(BM_BuildCollisionTable);

void BM_Step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const fhp::CollisionTable table = fhp::build_collision_table();
    fhp::Lattice lattice = half_filled(n, n, 12);
    fhp::Stepper stepper(table, fhp::ChiralityStream(12), 1);
    std::int64_t t = 0;
    for (auto _ : state) stepper.advance(lattice, t++);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) * n);
}
BENCHMARK(BM_Step)->Arg(100)->Arg(256)->Arg(512);

void BM_StepThreaded(benchmark::State& state) {
    const int threads = static_cast<int>(state.range(0));
    const fhp::CollisionTable table = fhp::build_collision_table();
    fhp::Lattice lattice = half_filled(512, 512, 12);
    fhp::Stepper stepper(table, fhp::ChiralityStream(12), threads);
    std::int64_t t = 0;
    for (auto _ : state) stepper.advance(lattice, t++);
    state.SetItemsProcessed(state.iterations() * 512ll * 512ll);
}
BENCHMARK(BM_StepThreaded)->Arg(1)->Arg(2)->Arg(4);

void BM_CoarseGrain(benchmark::State& state) {
    const fhp::Lattice lattice = half_filled(256, 256, 12);
    for (auto _ : state) benchmark::DoNotOptimize(fhp::coarse_grain(lattice, 16));
}
BENCHMARK(BM_CoarseGrain);

} // namespace
