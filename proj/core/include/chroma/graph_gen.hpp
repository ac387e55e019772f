#pragma once

#include <cstdint>
#include <string>

#include "chroma/graph.hpp"

namespace chroma {

/// Declarative description of a graph instance. Random families are a
/// deterministic function of the seed. `copies` > 1 wraps any base family in
/// that many disjoint copies.
struct GraphFamilySpec {
    enum class Family {
        path,
        cycle,
        complete,
        complete_bipartite,
        rooted_arity_tree,
        random_regular,
        erdos_renyi_triangle_erased,
        from_file,
    };

    Family family = Family::path;
    int n = 0;      // path, cycle, complete, random families
    int a = 0;      // complete_bipartite part sizes
    int b = 0;
    int arity = 0;  // rooted_arity_tree
    int depth = 0;
    int degree = 0;  // random_regular
    double edge_probability = 0.0;
    std::uint64_t seed = 0;
    int copies = 1;
    std::string path;  // from_file

    static Family parse_family(const std::string& name);
    static std::string family_name(Family f);
};

Graph generate(const GraphFamilySpec& spec);

Graph make_path(int n);
Graph make_cycle(int n);
Graph make_complete(int n);
Graph make_complete_bipartite(int a, int b);

/// Rooted tree where the root and every internal vertex have `arity`
/// children; leaves sit at distance `depth` from the root. Vertex 0 is the
/// root, levels are numbered consecutively.
Graph make_rooted_arity_tree(int arity, int depth);

Graph make_disjoint_copies(const Graph& base, int copies);

/// Configuration model with rejection of loops and parallel edges; retries
/// up to `max_retries` pairings before giving up.
Graph make_random_regular(int degree, int n, std::uint64_t seed, int max_retries = 1000);

/// G(n, p), then repeatedly delete one (seeded-random) edge of some triangle
/// until triangle-free.
Graph make_erdos_renyi_triangle_erased(int n, double p, std::uint64_t seed);

}  // namespace chroma
