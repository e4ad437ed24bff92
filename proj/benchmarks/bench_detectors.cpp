#include <benchmark/benchmark.h>

#include "kns/dataset.hpp"
#include "kns/detector.hpp"
#include "kns/lof.hpp"
#include "kns/section_space.hpp"

namespace {

kns::SyntheticDataset make_data(std::size_t m, std::size_t n) {
    kns::GeneratorSpec spec;
    spec.m = m;
    spec.n_normal = n - 10;
    spec.n_outliers = 10;
    spec.seed = 42;
    return kns::generate_synthetic(spec);
}

void BM_BuildSectionSpace(benchmark::State& state) {
    const auto synth = make_data(state.range(0), 500);
    kns::KnsParams params;
    const int scn = params.resolve_scn(500);
    for (auto _ : state) {
        auto space = kns::SectionSpace::build(synth.data, scn);
        benchmark::DoNotOptimize(space);
    }
}
BENCHMARK(BM_BuildSectionSpace)->Arg(10)->Arg(100)->Arg(1000);

void BM_ScoreFull(benchmark::State& state) {
    const auto synth = make_data(state.range(0), 500);
    kns::KnsParams params;
    params.strategy = kns::Strategy::full;
    auto space = kns::SectionSpace::build(synth.data, params.resolve_scn(500));
    for (auto _ : state) {
        auto report = kns::score(space, params);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_ScoreFull)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ScoreSampled(benchmark::State& state) {
    const auto synth = make_data(state.range(0), 500);
    kns::KnsParams params;
    params.strategy = kns::Strategy::sampled;
    auto space = kns::SectionSpace::build(synth.data, params.resolve_scn(500));
    for (auto _ : state) {
        auto report = kns::score(space, params);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_ScoreSampled)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Lof(benchmark::State& state) {
    const auto synth = make_data(state.range(0), 500);
    for (auto _ : state) {
        auto report = kns::lof_score(synth.data, {10});
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_Lof)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
