#include <benchmark/benchmark.h>

#include "helixkit/classify.hpp"
#include "helixkit/harmonic.hpp"
#include "helixkit/synthesize.hpp"

using namespace helixkit;

static void BM_JetProduct(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    const Jet a = sin(Jet::variable(0.7, order));
    const Jet b = exp(Jet::variable(0.3, order));
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetProduct)->Arg(4)->Arg(8)->Arg(16);

static void BM_FrenetSample(benchmark::State& state) {
    const CurveSpec helix = make_circular_helix(2.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(frenet_at(helix, 1.234));
}
BENCHMARK(BM_FrenetSample);

static void BM_BuildApparatus(benchmark::State& state) {
    const CurveSpec helix = make_circular_helix(2.0, 1.0);
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_apparatus(helix, grid));
}
BENCHMARK(BM_BuildApparatus)->Arg(128)->Arg(512);

static void BM_HarmonicProfiles(benchmark::State& state) {
    const CurveSpec helix = make_circular_helix(2.0, 1.0);
    const FrenetApparatus app = build_apparatus(helix, 256);
    for (auto _ : state) {
        benchmark::DoNotOptimize(harmonic_h(app));
        benchmark::DoNotOptimize(harmonic_hstar(app));
    }
}
BENCHMARK(BM_HarmonicProfiles);

static void BM_BruteForceAxis(benchmark::State& state) {
    const CurveSpec helix = make_circular_helix(2.0, 1.0);
    const FrenetApparatus app = build_apparatus(helix, 128);
    const int res = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_axis(app, 1, res));
}
BENCHMARK(BM_BruteForceAxis)->Arg(32)->Arg(64);

static void BM_IntegrateFrenet(benchmark::State& state) {
    const InclinedFixture fx = make_inclined_fixture(4, 7);
    for (auto _ : state) benchmark::DoNotOptimize(integrate_frenet(fx.prescription));
}
BENCHMARK(BM_IntegrateFrenet);

BENCHMARK_MAIN();
