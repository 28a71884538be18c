#include <benchmark/benchmark.h>

#include "balsched/datasets.hpp"
#include "balsched/offpsp.hpp"
#include "balsched/ppsjbp.hpp"

namespace {

balsched::JobPool make_pool(std::size_t count) {
    balsched::SyntheticSpec spec;
    spec.count = count;
    spec.seed = 99;
    return balsched::generate_synthetic(spec);
}

void BM_rra(benchmark::State& state) {
    const auto pool = make_pool(200);
    balsched::RraConfig config;
    config.iterations = static_cast<std::uint64_t>(state.range(0));
    config.schedule_count = 4;
    config.master_seed = 7;
    for (auto _ : state) {
        auto out = balsched::rra(pool, config);
        benchmark::DoNotOptimize(out.cost_matrix.data);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_rra)->RangeMultiplier(2)->Range(1000, 16000);

void BM_rra_pool_size(benchmark::State& state) {
    const auto pool = make_pool(static_cast<std::size_t>(state.range(0)));
    balsched::RraConfig config;
    config.iterations = 2000;
    config.schedule_count = 4;
    config.master_seed = 7;
    for (auto _ : state) {
        auto out = balsched::rra(pool, config);
        benchmark::DoNotOptimize(out.cost_matrix.data);
    }
}
BENCHMARK(BM_rra_pool_size)->RangeMultiplier(4)->Range(50, 3200);

void BM_mbdf(benchmark::State& state) {
    const auto pool = make_pool(200);
    balsched::RraConfig config;
    config.iterations = static_cast<std::uint64_t>(state.range(0));
    config.schedule_count = 4;
    config.master_seed = 7;
    const auto out = balsched::rra(pool, config);
    for (auto _ : state) {
        auto best = balsched::mbdf(out.cost_matrix);
        benchmark::DoNotOptimize(best);
    }
}
BENCHMARK(BM_mbdf)->RangeMultiplier(2)->Range(1000, 16000);

void BM_full_pipeline(benchmark::State& state) {
    const auto pool = make_pool(200);
    balsched::RraConfig config;
    config.iterations = 8000;
    config.schedule_count = 4;
    config.master_seed = 7;
    for (auto _ : state) {
        auto set = balsched::run_ppsjbp(pool, config);
        benchmark::DoNotOptimize(set.variance);
    }
}
BENCHMARK(BM_full_pipeline);

void BM_offpsp(benchmark::State& state) {
    const auto pool = make_pool(static_cast<std::size_t>(state.range(0)));
    balsched::OffpspConfig config;
    config.schedule_count = 4;
    for (auto _ : state) {
        auto set = balsched::run_offpsp(pool, config);
        benchmark::DoNotOptimize(set.variance);
    }
}
BENCHMARK(BM_offpsp)->RangeMultiplier(4)->Range(50, 3200);

}  // namespace

BENCHMARK_MAIN();
