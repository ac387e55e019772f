#include "chroma/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace chroma {

namespace {

Colouring exact_sequential_sample(const Graph& g, const ListAssignment& L,
                                  const SamplerConfig& cfg, SplitMix64& rng) {
    EnumerationOptions opts;
    opts.node_budget = cfg.node_budget;
    Colouring sigma = Colouring::uncoloured(g.vertex_count());
    opts.pinned = sigma;
    BigInt total = count_colourings(g, L, opts).count;
    if (total == 0) throw DomainError("sample_uniform: no proper colourings");
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const AvailableList avail = available_list(g, L, sigma, v);
        std::vector<BigInt> weights(avail.colours.size());
        BigInt sum = 0;
        for (std::size_t i = 0; i < avail.colours.size(); ++i) {
            sigma.values[v] = avail.colours[i];
            opts.pinned = sigma;
            weights[i] = count_colourings(g, L, opts).count;
            sum += weights[i];
        }
        // sum equals the number of completions of the current prefix.
        BigInt r = uniform_below(sum, rng);
        std::size_t choice = 0;
        while (r >= weights[choice]) {
            r -= weights[choice];
            ++choice;
        }
        sigma.values[v] = avail.colours[choice];
    }
    return sigma;
}

/// First proper colouring in lexicographic order, as a deterministic chain
/// start for Glauber dynamics.
Colouring first_colouring(const Graph& g, const ListAssignment& L, std::uint64_t node_budget) {
    EnumerationOptions opts;
    opts.node_budget = node_budget;
    std::optional<Colouring> found;
    for_each_colouring(
        g, L,
        [&](const Colouring& sigma) {
            found = sigma;
            return false;
        },
        opts);
    if (!found) throw DomainError("sample_uniform: no proper colourings");
    return *found;
}

}  // namespace

Colouring glauber_step(const Graph& g, const ListAssignment& L, const Colouring& sigma,
                       SplitMix64& rng) {
    if (!sigma.is_total()) throw DomainError("glauber_step: total colouring required");
    Colouring next = sigma;
    const Vertex v = rng.pick_index(g.vertex_count());
    const AvailableList avail = available_list(g, L, sigma, v);
    next.values[v] = avail.colours[rng.pick_index(avail.order())];
    return next;
}

Colouring sample_uniform(const Graph& g, const ListAssignment& L, const SamplerConfig& cfg) {
    SplitMix64 rng(cfg.seed);
    if (cfg.method == SamplerConfig::Method::exact_sequential)
        return exact_sequential_sample(g, L, cfg, rng);
    if (cfg.burnin < 0 || cfg.thin < 0)
        throw DomainError("sample_uniform: burnin and thin must be non-negative");
    Colouring sigma = first_colouring(g, L, cfg.node_budget);
    for (long long i = 0; i < cfg.burnin; ++i) sigma = glauber_step(g, L, sigma, rng);
    return sigma;
}

std::vector<Colouring> sample_batch(const Graph& g, const ListAssignment& L,
                                    const SamplerConfig& cfg, int count) {
    if (count < 0) throw DomainError("sample_batch: negative count");
    std::vector<Colouring> out;
    out.reserve(count);
    if (cfg.method == SamplerConfig::Method::exact_sequential) {
        SplitMix64 rng(cfg.seed);
        for (int i = 0; i < count; ++i) {
            SamplerConfig one = cfg;
            one.seed = rng.derive(static_cast<std::uint64_t>(i)).seed();
            out.push_back(sample_uniform(g, L, one));
        }
        return out;
    }
    SplitMix64 rng(cfg.seed);
    Colouring sigma = first_colouring(g, L, cfg.node_budget);
    for (long long i = 0; i < cfg.burnin; ++i) sigma = glauber_step(g, L, sigma, rng);
    for (int i = 0; i < count; ++i) {
        if (i > 0)
            for (long long s = 0; s < std::max<long long>(1, cfg.thin); ++s)
                sigma = glauber_step(g, L, sigma, rng);
        out.push_back(sigma);
    }
    return out;
}

namespace {

/// Lists for N(v) against sigma restricted to G \ N[v]; shared by the
/// sampler and the exact-distribution builder.
std::vector<AvailableList> resample_lists(const Graph& g, const ListAssignment& L,
                                          const Colouring& sigma, Vertex v) {
    g.check_vertex(v);
    if (sigma.size() != g.vertex_count())
        throw DomainError("neighbourhood_resample: size mismatch");
    if (sigma.is_coloured(v))
        throw DomainError("neighbourhood_resample: v must be uncoloured (sigma on G \\ v)");
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        if (u != v && !sigma.is_coloured(u))
            throw DomainError("neighbourhood_resample: sigma must colour all of G \\ v");
    if (!is_independent_set(g, g.neighbours(v)))
        throw DomainError("neighbourhood_resample: N(v) must be an independent set");
    if (!is_proper(g, L, sigma))
        throw DomainError("neighbourhood_resample: sigma is not proper");
    Colouring stripped = sigma;
    for (Vertex u : g.neighbours(v)) stripped.values[u] = Colouring::kUncoloured;
    std::vector<AvailableList> lists;
    lists.reserve(g.neighbours(v).size());
    for (Vertex u : g.neighbours(v)) lists.push_back(available_list(g, L, stripped, u));
    return lists;
}

}  // namespace

Colouring neighbourhood_resample(const Graph& g, const ListAssignment& L, const Colouring& sigma,
                                 Vertex v, SplitMix64& rng) {
    const auto lists = resample_lists(g, L, sigma, v);
    Colouring out = sigma;
    for (const AvailableList& avail : lists)
        out.values[avail.vertex] = avail.colours[rng.pick_index(avail.order())];
    return out;
}

std::vector<std::pair<Colouring, BigRat>> neighbourhood_resample_distribution(
    const Graph& g, const ListAssignment& L, const Colouring& sigma, Vertex v) {
    const auto lists = resample_lists(g, L, sigma, v);
    std::vector<std::pair<Colouring, BigRat>> out;
    Colouring current = sigma;
    BigRat prob = 1;
    const std::function<void(std::size_t)> walk = [&](std::size_t idx) {
        if (idx == lists.size()) {
            out.emplace_back(current, prob);
            return;
        }
        const auto& avail = lists[idx];
        const BigRat step = BigRat(1, avail.order());
        for (int colour : avail.colours) {
            current.values[avail.vertex] = colour;
            prob *= step;
            walk(idx + 1);
            prob /= step;
        }
        current.values[avail.vertex] = sigma.values[avail.vertex];
    };
    walk(0);
    return out;
}

GreedyResult greedy_colour(const Graph& g, int k, SplitMix64& rng) {
    if (k < 1) throw DomainError("greedy_colour: k >= 1 required");
    const ListAssignment L = ListAssignment::uniform(g.vertex_count(), k);
    Colouring sigma = Colouring::uncoloured(g.vertex_count());
    std::vector<Vertex> uncoloured(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) uncoloured[v] = v;
    while (!uncoloured.empty()) {
        int best = -1;
        std::vector<std::size_t> argmin;
        std::vector<std::vector<int>> avail(uncoloured.size());
        for (std::size_t i = 0; i < uncoloured.size(); ++i) {
            avail[i] = available_list(g, L, sigma, uncoloured[i]).colours;
            const int a = static_cast<int>(avail[i].size());
            if (best == -1 || a < best) {
                best = a;
                argmin.clear();
            }
            if (a == best) argmin.push_back(i);
        }
        const std::size_t pick = argmin[rng.pick_index(static_cast<int>(argmin.size()))];
        const Vertex v = uncoloured[pick];
        if (best == 0) return GreedyResult{std::nullopt, v};
        sigma.values[v] = avail[pick][rng.pick_index(best)];
        uncoloured.erase(uncoloured.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return GreedyResult{sigma, -1};
}

LocalSearchResult local_search_colour(const Graph& g, int k, const LocalSearchConfig& cfg,
                                      SplitMix64& rng) {
    if (k < 1) throw DomainError("local_search_colour: k >= 1 required");
    if (has_triangle(g)) throw DomainError("local_search_colour: triangle-free input required");
    const int floor =
        cfg.list_floor ? *cfg.list_floor
                       : static_cast<int>(std::ceil(k / std::log(std::max(2.0, double(k)))));
    const ListAssignment L = ListAssignment::uniform(g.vertex_count(), k);
    Colouring sigma = Colouring::uncoloured(g.vertex_count());

    auto bad_vertices = [&]() {
        std::vector<Vertex> bad;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            if (sigma.is_coloured(v)) continue;
            const int ell = available_list(g, L, sigma, v).order();
            if (ell == 0 || ell < floor) bad.push_back(v);
        }
        return bad;
    };

    for (long long iter = 0; iter < cfg.max_iterations; ++iter) {
        const auto bad = bad_vertices();
        if (bad.empty()) {
            // Greedy completion; partial progress is kept on a block so the
            // blocked vertex surfaces as Bad in the next round.
            bool blocked = false;
            for (Vertex v = 0; v < g.vertex_count() && !blocked; ++v) {
                if (sigma.is_coloured(v)) continue;
                const AvailableList avail = available_list(g, L, sigma, v);
                if (avail.order() == 0) blocked = true;
                else sigma.values[v] = avail.colours[rng.pick_index(avail.order())];
            }
            if (!blocked) return LocalSearchResult{sigma, iter};
            continue;
        }
        const Vertex v = bad[rng.pick_index(static_cast<int>(bad.size()))];
        // Resample a partial proper colouring of N(v): uncolour it, then
        // recolour in random order, leaving a vertex blank on an empty list.
        std::vector<Vertex> nbrs = g.neighbours(v);
        for (Vertex u : nbrs) sigma.values[u] = Colouring::kUncoloured;
        for (std::size_t i = nbrs.size(); i > 1; --i)
            std::swap(nbrs[i - 1], nbrs[rng.bounded(i)]);
        for (Vertex u : nbrs) {
            const AvailableList avail = available_list(g, L, sigma, u);
            if (avail.order() > 0)
                sigma.values[u] = avail.colours[rng.pick_index(avail.order())];
        }
    }
    return LocalSearchResult{std::nullopt, cfg.max_iterations};
}

}  // namespace chroma
