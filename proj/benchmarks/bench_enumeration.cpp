#include <benchmark/benchmark.h>

#include "chroma/enumeration.hpp"
#include "chroma/graph_gen.hpp"

using namespace chroma;

static void BM_CountCycle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Graph g = make_cycle(n);
    const ListAssignment L = ListAssignment::uniform(n, 4);
    for (auto _ : state) {
        auto r = count_colourings(g, L);
        benchmark::DoNotOptimize(r.log_count);
    }
}
BENCHMARK(BM_CountCycle)->Arg(8)->Arg(16)->Arg(24);

static void BM_CountCompleteBipartite(benchmark::State& state) {
    const int b = static_cast<int>(state.range(0));
    const Graph g = make_complete_bipartite(b, b);
    const ListAssignment L = ListAssignment::uniform(2 * b, 4);
    for (auto _ : state) {
        auto r = count_colourings(g, L);
        benchmark::DoNotOptimize(r.log_count);
    }
}
BENCHMARK(BM_CountCompleteBipartite)->Arg(3)->Arg(4)->Arg(5);

static void BM_ChromaticCountTriangleErased(benchmark::State& state) {
    const Graph g = make_erdos_renyi_triangle_erased(14, 0.55, 3);
    for (auto _ : state) {
        auto count = chromatic_count(g, 24);
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_ChromaticCountTriangleErased);

static void BM_EnumerateColourings(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Graph g = make_cycle(n);
    const ListAssignment L = ListAssignment::uniform(n, 3);
    for (auto _ : state) {
        auto cols = enumerate_colourings(g, L, {}, 1u << 20);
        benchmark::DoNotOptimize(cols.size());
    }
}
BENCHMARK(BM_EnumerateColourings)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
