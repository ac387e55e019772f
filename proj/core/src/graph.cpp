#include "chroma/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace chroma {

Graph::Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges)
    : n_(vertex_count) {
    if (vertex_count < 0) throw DomainError("Graph: negative vertex count");
    adj_.assign(n_, {});
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw DomainError("Graph: edge endpoint out of range");
        if (u == v) throw DomainError("Graph: self-loop");
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    m_ = 0;
    for (auto& nbrs : adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        m_ += static_cast<int>(nbrs.size());
    }
    m_ /= 2;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& nbrs = adj_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

int max_degree(const Graph& g) {
    int d = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) d = std::max(d, g.degree(v));
    return d;
}

std::optional<int> girth(const Graph& g) {
    // BFS from every vertex; a non-tree edge (u,w) seen from root s closes a
    // walk of length dist[u]+dist[w]+1 through s that contains a cycle. The
    // minimum over all roots and closing edges is exact.
    const int n = g.vertex_count();
    int best = -1;
    std::vector<int> dist(n), parent(n);
    for (Vertex s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::deque<Vertex> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            const Vertex u = queue.front();
            queue.pop_front();
            for (Vertex w : g.neighbours(u)) {
                if (dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if (w != parent[u]) {
                    const int len = dist[u] + dist[w] + 1;
                    if (best == -1 || len < best) best = len;
                }
            }
        }
    }
    if (best == -1) return std::nullopt;
    return best;
}

bool is_forest(const Graph& g) {
    // Union-find cycle detection.
    const int n = g.vertex_count();
    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (const auto& [u, v] : g.edges()) {
        const int ru = find(u), rv = find(v);
        if (ru == rv) return false;
        root[ru] = rv;
    }
    return true;
}

bool has_triangle(const Graph& g) {
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v : g.neighbours(u)) {
            if (v < u) continue;
            for (Vertex w : g.neighbours(u)) {
                if (w <= v) continue;
                if (g.has_edge(v, w)) return true;
            }
        }
    return false;
}

double neighbourhood_avg_degree(const Graph& g, Vertex v) {
    const auto& nbrs = g.neighbours(v);
    if (nbrs.empty()) return 0.0;
    long long internal_edges = 0;
    for (std::size_t i = 0; i < nbrs.size(); ++i)
        for (std::size_t j = i + 1; j < nbrs.size(); ++j)
            if (g.has_edge(nbrs[i], nbrs[j])) ++internal_edges;
    return 2.0 * static_cast<double>(internal_edges) / static_cast<double>(nbrs.size());
}

bool is_independent_set(const Graph& g, const std::vector<Vertex>& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        g.check_vertex(s[i]);
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (g.has_edge(s[i], s[j])) return false;
    }
    return true;
}

std::vector<std::vector<Vertex>> distance_layers(const Graph& g, Vertex v, int depth) {
    g.check_vertex(v);
    if (depth < 0) throw DomainError("distance_layers: negative depth");
    std::vector<int> dist(g.vertex_count(), -1);
    std::deque<Vertex> queue{v};
    dist[v] = 0;
    std::vector<std::vector<Vertex>> layers(depth + 1);
    layers[0].push_back(v);
    while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop_front();
        if (dist[u] == depth) continue;
        for (Vertex w : g.neighbours(u)) {
            if (dist[w] != -1) continue;
            dist[w] = dist[u] + 1;
            layers[dist[w]].push_back(w);
            queue.push_back(w);
        }
    }
    return layers;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<Vertex>& keep) {
    std::vector<int> new_of_old(g.vertex_count(), -1);
    std::vector<Vertex> old_of_new;
    old_of_new.reserve(keep.size());
    for (Vertex v : keep) {
        g.check_vertex(v);
        if (new_of_old[v] != -1) throw DomainError("induced_subgraph: duplicate vertex");
        new_of_old[v] = static_cast<int>(old_of_new.size());
        old_of_new.push_back(v);
    }
    std::vector<std::pair<int, int>> edges;
    for (Vertex v : keep)
        for (Vertex w : g.neighbours(v))
            if (v < w && new_of_old[w] != -1)
                edges.emplace_back(new_of_old[v], new_of_old[w]);
    return InducedSubgraph{Graph(static_cast<int>(keep.size()), edges),
                           std::move(old_of_new), std::move(new_of_old)};
}

InducedSubgraph remove_vertex(const Graph& g, Vertex v) {
    g.check_vertex(v);
    std::vector<Vertex> keep;
    keep.reserve(g.vertex_count() - 1);
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        if (u != v) keep.push_back(u);
    return induced_subgraph(g, keep);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::pair<int, int>> edges = a.edges();
    const int shift = a.vertex_count();
    for (const auto& [u, v] : b.edges()) edges.emplace_back(u + shift, v + shift);
    return Graph(a.vertex_count() + b.vertex_count(), edges);
}

}  // namespace chroma
