#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "chroma/colouring.hpp"
#include "chroma/enumeration.hpp"
#include "chroma/graph.hpp"
#include "chroma/numbers.hpp"
#include "chroma/rng.hpp"

namespace chroma {

struct SamplerConfig {
    enum class Method { exact_sequential, glauber };

    std::uint64_t seed = 0;
    Method method = Method::exact_sequential;
    long long burnin = 1000;
    long long thin = 10;
    std::uint64_t node_budget = 1'000'000'000;
};

/// One colouring from the target distribution. exact_sequential is exactly
/// uniform: vertices are coloured in id order, each colour weighted by the
/// exact count of proper completions. glauber is approximate after burn-in.
Colouring sample_uniform(const Graph& g, const ListAssignment& L, const SamplerConfig& cfg);

/// A batch of samples; under glauber, consecutive samples are `thin` chain
/// steps apart after a single burn-in.
std::vector<Colouring> sample_batch(const Graph& g, const ListAssignment& L,
                                    const SamplerConfig& cfg, int count);

/// Heat-bath step: one uniform vertex, colour resampled uniformly from its
/// current available list (which always contains its current colour).
Colouring glauber_step(const Graph& g, const ListAssignment& L, const Colouring& sigma,
                       SplitMix64& rng);

/// Simultaneously redraws the colour of every u in N(v) uniformly from the
/// list induced by sigma restricted to G \ N[v]. Requires sigma proper on
/// G \ v (v uncoloured) and N(v) independent; preserves uniformity on
/// C(G \ v).
Colouring neighbourhood_resample(const Graph& g, const ListAssignment& L, const Colouring& sigma,
                                 Vertex v, SplitMix64& rng);

/// The exact outcome distribution of neighbourhood_resample from `sigma`:
/// every reachable colouring with its rational probability. This is the
/// "sum over all random draws" object used by the stationarity checks.
std::vector<std::pair<Colouring, BigRat>> neighbourhood_resample_distribution(
    const Graph& g, const ListAssignment& L, const Colouring& sigma, Vertex v);

struct GreedyResult {
    std::optional<Colouring> colouring;
    Vertex blocked = -1;  // first vertex found with an empty available list

    bool success() const { return colouring.has_value(); }
};

/// Achlioptas-style greedy: repeatedly pick a uniform vertex among the
/// uncoloured ones with the fewest available colours and colour it
/// uniformly from its list. Failure is a value, not an error.
GreedyResult greedy_colour(const Graph& g, int k, SplitMix64& rng);

struct LocalSearchConfig {
    /// An uncoloured vertex is Bad when its available list is empty or
    /// shorter than this floor. Defaults to ceil(k / ln k) when unset.
    std::optional<int> list_floor;
    long long max_iterations = 10000;
};

struct LocalSearchResult {
    std::optional<Colouring> colouring;
    long long iterations = 0;

    bool success() const { return colouring.has_value(); }
};

/// Molloy-style local search on triangle-free graphs: while a Bad vertex
/// exists, resample a partial proper colouring of its neighbourhood; once
/// none is left, complete greedily. Bad-vertex priorities are uniform.
LocalSearchResult local_search_colour(const Graph& g, int k, const LocalSearchConfig& cfg,
                                      SplitMix64& rng);

}  // namespace chroma
