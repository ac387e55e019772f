#include <benchmark/benchmark.h>

#include "chroma/graph_gen.hpp"
#include "chroma/sampling.hpp"

using namespace chroma;

static void BM_ExactSample(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Graph g = make_cycle(n);
    const ListAssignment L = ListAssignment::uniform(n, 3);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        SamplerConfig cfg;
        cfg.seed = ++seed;
        auto sigma = sample_uniform(g, L, cfg);
        benchmark::DoNotOptimize(sigma.values.data());
    }
}
BENCHMARK(BM_ExactSample)->Arg(5)->Arg(10)->Arg(20);

static void BM_GlauberStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Graph g = make_cycle(n);
    const ListAssignment L = ListAssignment::uniform(n, 4);
    SamplerConfig cfg;
    Colouring sigma = sample_uniform(g, L, cfg);
    SplitMix64 rng(3);
    for (auto _ : state) {
        sigma = glauber_step(g, L, sigma, rng);
        benchmark::DoNotOptimize(sigma.values.data());
    }
}
BENCHMARK(BM_GlauberStep)->Arg(10)->Arg(100);

static void BM_NeighbourhoodResample(benchmark::State& state) {
    const Graph star = make_complete_bipartite(1, static_cast<int>(state.range(0)));
    const ListAssignment L = ListAssignment::uniform(star.vertex_count(), 3);
    Colouring sigma = Colouring::uncoloured(star.vertex_count());
    for (int i = 1; i < star.vertex_count(); ++i) sigma.values[i] = i % 3;
    SplitMix64 rng(5);
    for (auto _ : state) {
        auto out = neighbourhood_resample(star, L, sigma, 0, rng);
        benchmark::DoNotOptimize(out.values.data());
    }
}
BENCHMARK(BM_NeighbourhoodResample)->Arg(6)->Arg(20);

BENCHMARK_MAIN();
