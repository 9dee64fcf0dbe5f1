#include <benchmark/benchmark.h>

#include "fbmc/sim.hpp"
#include "fbmc/tailshort.hpp"

namespace {

struct Fixture {
    fbmc::PrototypeFilter filter = fbmc::phydyas_filter(256, 4);
    fbmc::BurstConfig burst = fbmc::BurstConfig::make(256, 4, 14, 200, 6, 0.1);
    fbmc::QamMapper mapper{64};
    fbmc::PamGrid grid = fbmc::random_packet(burst, mapper, 1, 0).grid;
};

Fixture& fx() {
    static Fixture f;
    return f;
}

const fbmc::CancellationDesign& tail_design() {
    static fbmc::CancellationDesign d =
        fbmc::build_design(fx().filter, fx().burst, fbmc::Edge::tail);
    return d;
}

void BM_Synthesize(benchmark::State& state) {
    for (auto _ : state) {
        auto s = fbmc::synthesize(fx().grid, fx().filter, fx().burst);
        benchmark::DoNotOptimize(s.samples.data());
    }
}
BENCHMARK(BM_Synthesize);

void BM_Demodulate(benchmark::State& state) {
    const auto s = fbmc::synthesize(fx().grid, fx().filter, fx().burst);
    for (auto _ : state) {
        auto g = fbmc::demodulate(s, fx().filter, fx().burst);
        benchmark::DoNotOptimize(g.values.data());
    }
}
BENCHMARK(BM_Demodulate);

void BM_ApplyDesign(benchmark::State& state) {
    const auto s = fbmc::synthesize(fx().grid, fx().filter, fx().burst);
    const auto& d = tail_design();
    for (auto _ : state) {
        auto r = fbmc::apply_design(s, d, fx().filter, fx().burst);
        benchmark::DoNotOptimize(r.block.values.data());
    }
}
BENCHMARK(BM_ApplyDesign);

void BM_BuildDesign(benchmark::State& state) {
    const auto filter = fbmc::phydyas_filter(64, 4);
    const auto burst = fbmc::BurstConfig::make(64, 4, 14, 48, 6, 0.1);
    for (auto _ : state) {
        auto d = fbmc::build_design(filter, burst, fbmc::Edge::tail);
        benchmark::DoNotOptimize(d.B.data());
    }
}
BENCHMARK(BM_BuildDesign);

}  // namespace

BENCHMARK_MAIN();
