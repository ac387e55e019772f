#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "chroma/errors.hpp"

namespace chroma {

using Vertex = int;

/// Simple undirected graph on dense vertex ids 0..n-1. Immutable after
/// construction; self-loops are rejected, parallel edges collapse to one.
class Graph {
  public:
    Graph() = default;
    Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return m_; }

    const std::vector<Vertex>& neighbours(Vertex v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(Vertex v) const { return static_cast<int>(neighbours(v).size()); }

    bool has_edge(Vertex u, Vertex v) const;

    /// All edges as pairs with u < v, sorted.
    std::vector<std::pair<int, int>> edges() const;

    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_) throw DomainError("invalid vertex id");
    }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && adj_ == other.adj_;
    }

  private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<Vertex>> adj_;
};

int max_degree(const Graph& g);

/// Length of a shortest cycle; std::nullopt for forests (infinite girth).
std::optional<int> girth(const Graph& g);

bool is_forest(const Graph& g);

bool has_triangle(const Graph& g);

/// Average degree of the subgraph induced by N(v); 0 when N(v) is empty or
/// independent.
double neighbourhood_avg_degree(const Graph& g, Vertex v);

bool is_independent_set(const Graph& g, const std::vector<Vertex>& s);

/// Layers U_0..U_depth where U_i holds the vertices at distance exactly i
/// from v. Vertices further than `depth` (or unreachable) are absent.
std::vector<std::vector<Vertex>> distance_layers(const Graph& g, Vertex v, int depth);

/// Induced subgraph together with the id translation in both directions.
/// new_of_old[v] is -1 for dropped vertices.
struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> old_of_new;
    std::vector<int> new_of_old;
};

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<Vertex>& keep);
InducedSubgraph remove_vertex(const Graph& g, Vertex v);

Graph disjoint_union(const Graph& a, const Graph& b);

}  // namespace chroma
