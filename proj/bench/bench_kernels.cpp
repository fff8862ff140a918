// Serial reference kernels against their OpenMP counterparts.

#include "support/models.hpp"
#include "tuning/absorption.hpp"
#include "tuning/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace tuning;

namespace {

struct Instance {
    ChainSpec spec;
    AbsorptionAnalysis analysis;
    kernels::GridInputs grid;
};

Instance make_instance(Eigen::Index n) {
    Rng rng(derive_seed(99, static_cast<std::uint64_t>(n)));
    Instance inst{testing::random_chain(n, rng), {}, {}};
    inst.analysis = analyze(inst.spec);
    inst.grid = {inst.spec.d0 + inst.analysis.r, inst.spec.d1 + inst.analysis.r, inst.analysis.b};
    return inst;
}

template <bool Parallel>
void BM_CostTables(benchmark::State& state) {
    const auto inst = make_instance(state.range(0));
    for (auto _ : state) {
        auto t = Parallel ? kernels::cost_tables(inst.grid) : kernels::serial::cost_tables(inst.grid);
        benchmark::DoNotOptimize(t);
    }
    state.SetComplexityN(state.range(0) * state.range(0));
}

template <bool Parallel>
void BM_Extremum(benchmark::State& state) {
    const auto inst = make_instance(state.range(0));
    const auto tables = kernels::serial::cost_tables(inst.grid);
    for (auto _ : state) {
        auto p = Parallel ? kernels::extremum(tables.c_table, Direction::Maximize)
                          : kernels::serial::extremum(tables.c_table, Direction::Maximize);
        benchmark::DoNotOptimize(p);
    }
}

template <bool Parallel>
void BM_RandomSearch(benchmark::State& state) {
    const auto inst = make_instance(8);
    const auto samples = state.range(0);
    for (auto _ : state) {
        auto r = Parallel ? kernels::random_search(inst.spec, inst.analysis, Direction::Maximize,
                                                   samples, 7, 0.0)
                          : kernels::serial::random_search(inst.spec, inst.analysis,
                                                           Direction::Maximize, samples, 7, 0.0);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * samples);
}

template <bool Parallel>
void BM_Replications(benchmark::State& state) {
    const auto inst = make_instance(8);
    const auto st = uniform_strategy(8);
    const auto count = state.range(0);
    const std::int64_t cycles = 10'000;
    for (auto _ : state) {
        auto r = Parallel ? kernels::replications(inst.spec, st, cycles, 3, count, {})
                          : kernels::serial::replications(inst.spec, st, cycles, 3, count, {});
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * count * cycles);
}

} // namespace

BENCHMARK(BM_CostTables<false>)->Name("cost_tables/serial")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_CostTables<true>)->Name("cost_tables/omp")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_Extremum<false>)->Name("extremum/serial")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_Extremum<true>)->Name("extremum/omp")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(BM_RandomSearch<false>)->Name("random_search/serial")->Arg(1000)->Arg(10000);
BENCHMARK(BM_RandomSearch<true>)->Name("random_search/omp")->Arg(1000)->Arg(10000);
BENCHMARK(BM_Replications<false>)->Name("replications/serial")->Arg(4)->Arg(16);
BENCHMARK(BM_Replications<true>)->Name("replications/omp")->Arg(4)->Arg(16);

BENCHMARK_MAIN();
