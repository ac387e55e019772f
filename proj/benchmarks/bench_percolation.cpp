#include <benchmark/benchmark.h>

#include "chroma/percolation.hpp"
#include "chroma/rng.hpp"

using namespace chroma;

static PercolationInstance wide_instance() {
    PercolationInstance inst;
    inst.arity = 12;
    inst.depth = 2;
    inst.threshold = 8;
    inst.p = BigRat(1, 9);
    return inst;
}

static void BM_Propagate(benchmark::State& state) {
    PercolationInstance inst;
    inst.arity = 4;
    inst.depth = static_cast<int>(state.range(0));
    inst.threshold = 2;
    SplitMix64 rng(1);
    std::vector<bool> mask(inst.leaf_count());
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = rng.bernoulli(0.3);
    for (auto _ : state) {
        auto r = propagate(inst, mask);
        benchmark::DoNotOptimize(r.root_active);
    }
}
BENCHMARK(BM_Propagate)->Arg(4)->Arg(6)->Arg(8);

static void BM_EstimateRoot(benchmark::State& state) {
    const PercolationInstance inst = wide_instance();
    const auto trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        SplitMix64 rng(7);
        auto est = estimate_root_probability(inst, trials, rng);
        benchmark::DoNotOptimize(est.estimate);
    }
}
BENCHMARK(BM_EstimateRoot)->Arg(1000)->Arg(10000);

static void BM_ExactRoot(benchmark::State& state) {
    const PercolationInstance inst = wide_instance();
    for (auto _ : state) {
        auto p = exact_root_probability_small(inst);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_ExactRoot);

BENCHMARK_MAIN();
