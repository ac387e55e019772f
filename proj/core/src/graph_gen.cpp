#include "chroma/graph_gen.hpp"

#include <algorithm>
#include <numeric>

#include "chroma/graph_io.hpp"
#include "chroma/rng.hpp"

namespace chroma {

GraphFamilySpec::Family GraphFamilySpec::parse_family(const std::string& name) {
    if (name == "path") return Family::path;
    if (name == "cycle") return Family::cycle;
    if (name == "complete") return Family::complete;
    if (name == "complete_bipartite" || name == "bipartite") return Family::complete_bipartite;
    if (name == "rooted_arity_tree" || name == "tree") return Family::rooted_arity_tree;
    if (name == "random_regular" || name == "regular") return Family::random_regular;
    if (name == "erdos_renyi_triangle_erased" || name == "er_triangle_erased")
        return Family::erdos_renyi_triangle_erased;
    if (name == "from_file" || name == "file") return Family::from_file;
    throw DomainError("unknown graph family: " + name);
}

std::string GraphFamilySpec::family_name(Family f) {
    switch (f) {
        case Family::path: return "path";
        case Family::cycle: return "cycle";
        case Family::complete: return "complete";
        case Family::complete_bipartite: return "complete_bipartite";
        case Family::rooted_arity_tree: return "rooted_arity_tree";
        case Family::random_regular: return "random_regular";
        case Family::erdos_renyi_triangle_erased: return "erdos_renyi_triangle_erased";
        case Family::from_file: return "from_file";
    }
    throw DomainError("unknown graph family tag");
}

Graph make_path(int n) {
    if (n < 0) throw DomainError("make_path: negative n");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, edges);
}

Graph make_cycle(int n) {
    if (n < 3) throw DomainError("make_cycle: n >= 3 required");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, edges);
}

Graph make_complete(int n) {
    if (n < 0) throw DomainError("make_complete: negative n");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(n, edges);
}

Graph make_complete_bipartite(int a, int b) {
    if (a < 0 || b < 0) throw DomainError("make_complete_bipartite: negative part size");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
    return Graph(a + b, edges);
}

Graph make_rooted_arity_tree(int arity, int depth) {
    if (arity < 1) throw DomainError("make_rooted_arity_tree: arity >= 1 required");
    if (depth < 0) throw DomainError("make_rooted_arity_tree: negative depth");
    // Level sizes arity^0 .. arity^depth; children of consecutive level
    // vertices are consecutive.
    long long total = 0, level = 1;
    for (int d = 0; d <= depth; ++d) {
        total += level;
        level *= arity;
        if (total > 50'000'000) throw DomainError("make_rooted_arity_tree: too many vertices");
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(total - 1));
    long long level_start = 0, level_size = 1;
    for (int d = 0; d < depth; ++d) {
        const long long next_start = level_start + level_size;
        for (long long i = 0; i < level_size; ++i)
            for (int c = 0; c < arity; ++c)
                edges.emplace_back(static_cast<int>(level_start + i),
                                   static_cast<int>(next_start + i * arity + c));
        level_start = next_start;
        level_size *= arity;
    }
    return Graph(static_cast<int>(total), edges);
}

Graph make_disjoint_copies(const Graph& base, int copies) {
    if (copies < 1) throw DomainError("make_disjoint_copies: copies >= 1 required");
    std::vector<std::pair<int, int>> edges;
    const auto base_edges = base.edges();
    for (int c = 0; c < copies; ++c) {
        const int shift = c * base.vertex_count();
        for (const auto& [u, v] : base_edges) edges.emplace_back(u + shift, v + shift);
    }
    return Graph(copies * base.vertex_count(), edges);
}

Graph make_random_regular(int degree, int n, std::uint64_t seed, int max_retries) {
    if (degree < 0 || n < 0) throw DomainError("make_random_regular: negative parameter");
    if (degree >= n && n > 0) throw DomainError("make_random_regular: degree >= n");
    if ((static_cast<long long>(n) * degree) % 2 != 0)
        throw DomainError("make_random_regular: n*degree must be even");
    SplitMix64 rng(seed);
    std::vector<int> stubs(static_cast<std::size_t>(n) * degree);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < degree; ++i) stubs[static_cast<std::size_t>(v) * degree + i] = v;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        // Fisher-Yates pairing of stubs.
        for (std::size_t i = stubs.size(); i > 1; --i)
            std::swap(stubs[i - 1], stubs[rng.bounded(i)]);
        bool simple = true;
        std::vector<std::pair<int, int>> edges;
        edges.reserve(stubs.size() / 2);
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v) {
                simple = false;
                break;
            }
            if (u > v) std::swap(u, v);
            edges.emplace_back(u, v);
        }
        if (!simple) continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
        return Graph(n, edges);
    }
    throw BudgetExceeded("make_random_regular: retry cap reached without a simple pairing");
}

Graph make_erdos_renyi_triangle_erased(int n, double p, std::uint64_t seed) {
    if (n < 0) throw DomainError("make_erdos_renyi_triangle_erased: negative n");
    if (p < 0.0 || p > 1.0) throw DomainError("make_erdos_renyi_triangle_erased: p outside [0,1]");
    SplitMix64 rng(seed);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) adj[i][j] = adj[j][i] = true;
    for (;;) {
        int tu = -1, tv = -1, tw = -1;
        for (int u = 0; u < n && tu == -1; ++u)
            for (int v = u + 1; v < n && tu == -1; ++v) {
                if (!adj[u][v]) continue;
                for (int w = v + 1; w < n; ++w)
                    if (adj[u][w] && adj[v][w]) {
                        tu = u, tv = v, tw = w;
                        break;
                    }
            }
        if (tu == -1) break;
        const int pick = static_cast<int>(rng.bounded(3));
        if (pick == 0) adj[tu][tv] = adj[tv][tu] = false;
        else if (pick == 1) adj[tu][tw] = adj[tw][tu] = false;
        else adj[tv][tw] = adj[tw][tv] = false;
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (adj[i][j]) edges.emplace_back(i, j);
    return Graph(n, edges);
}

Graph generate(const GraphFamilySpec& spec) {
    using Family = GraphFamilySpec::Family;
    Graph base;
    switch (spec.family) {
        case Family::path: base = make_path(spec.n); break;
        case Family::cycle: base = make_cycle(spec.n); break;
        case Family::complete: base = make_complete(spec.n); break;
        case Family::complete_bipartite: base = make_complete_bipartite(spec.a, spec.b); break;
        case Family::rooted_arity_tree: base = make_rooted_arity_tree(spec.arity, spec.depth); break;
        case Family::random_regular: base = make_random_regular(spec.degree, spec.n, spec.seed); break;
        case Family::erdos_renyi_triangle_erased:
            base = make_erdos_renyi_triangle_erased(spec.n, spec.edge_probability, spec.seed);
            break;
        case Family::from_file: base = load_graph(spec.path); break;
    }
    if (spec.copies == 1) return base;
    return make_disjoint_copies(base, spec.copies);
}

}  // namespace chroma
