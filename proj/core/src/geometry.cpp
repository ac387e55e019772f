#include "chroma/geometry.hpp"

#include <algorithm>
#include <numeric>

#include "chroma/enumeration.hpp"

namespace chroma {

namespace {

struct UnionFind {
    std::vector<int> root;

    explicit UnionFind(int n) : root(n) { std::iota(root.begin(), root.end(), 0); }

    int find(int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    }

    void unite(int a, int b) { root[find(a)] = find(b); }
};

int bounded_distance(const Colouring& a, const Colouring& b, int cap) {
    int d = 0;
    for (int v = 0; v < a.size(); ++v)
        if (a.values[v] != b.values[v] && ++d > cap) return d;
    return d;
}

}  // namespace

ColouringGraphView::ColouringGraphView(Graph g, int k, int t,
                                       std::vector<Colouring> colourings)
    : graph_(std::move(g)), k_(k), t_(t), colourings_(std::move(colourings)) {
    if (k < 0 || t < 0) throw DomainError("ColouringGraphView: negative parameter");
    build_index();
    build_clusters();
}

std::uint64_t ColouringGraphView::projection_hash(const Colouring& c,
                                                  const std::vector<Vertex>& block) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (Vertex v : block) {
        h ^= static_cast<std::uint64_t>(c.values[v]) + 0x9e3779b97f4a7c15ULL;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t ColouringGraphView::full_hash(const Colouring& c) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (int value : c.values) {
        h ^= static_cast<std::uint64_t>(value) + 0x9e3779b97f4a7c15ULL;
        h *= 1099511628211ULL;
    }
    return h;
}

void ColouringGraphView::build_index() {
    const int n = graph_.vertex_count();
    const int block_count = std::min(t_ + 1, std::max(1, n));
    blocks_.assign(block_count, {});
    for (Vertex v = 0; v < n; ++v) blocks_[v % block_count].push_back(v);
    buckets_.assign(block_count, {});
    for (int idx = 0; idx < size(); ++idx) {
        for (int b = 0; b < block_count; ++b)
            buckets_[b][projection_hash(colourings_[idx], blocks_[b])].push_back(idx);
        by_hash_[full_hash(colourings_[idx])].push_back(idx);
    }
}

void ColouringGraphView::build_clusters() {
    UnionFind uf(size());
    const int n = graph_.vertex_count();
    if (t_ >= n) {
        // Every pair is within distance n <= t.
        for (int idx = 1; idx < size(); ++idx) uf.unite(0, idx);
    } else {
        for (const auto& bucket_map : buckets_)
            for (const auto& [hash, members] : bucket_map) {
                (void)hash;
                for (std::size_t i = 0; i < members.size(); ++i)
                    for (std::size_t j = i + 1; j < members.size(); ++j) {
                        const int a = members[i], b = members[j];
                        if (uf.find(a) == uf.find(b)) continue;
                        if (bounded_distance(colourings_[a], colourings_[b], t_) <= t_)
                            uf.unite(a, b);
                    }
            }
    }
    cluster_id_.assign(size(), -1);
    std::unordered_map<int, int> label_of_root;
    for (int idx = 0; idx < size(); ++idx) {
        const int r = uf.find(idx);
        auto [it, inserted] = label_of_root.emplace(r, static_cast<int>(label_of_root.size()));
        cluster_id_[idx] = it->second;
        if (inserted) cluster_members_.emplace_back();
        cluster_members_[it->second].push_back(idx);
    }
}

int ColouringGraphView::index_of(const Colouring& tau) const {
    const auto it = by_hash_.find(full_hash(tau));
    if (it != by_hash_.end())
        for (int idx : it->second)
            if (colourings_[idx] == tau) return idx;
    throw DomainError("ColouringGraphView: colouring is not a proper colouring of the view");
}

std::vector<int> ColouringGraphView::neighbours_of(int idx) const {
    if (idx < 0 || idx >= size()) throw DomainError("neighbours_of: index out of range");
    if (t_ >= graph_.vertex_count()) {
        std::vector<int> all;
        for (int j = 0; j < size(); ++j)
            if (j != idx) all.push_back(j);
        return all;
    }
    std::vector<int> out;
    std::vector<bool> seen(size(), false);
    seen[idx] = true;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const auto it = buckets_[b].find(projection_hash(colourings_[idx], blocks_[b]));
        if (it == buckets_[b].end()) continue;
        for (int j : it->second) {
            if (seen[j]) continue;
            seen[j] = true;
            if (bounded_distance(colourings_[idx], colourings_[j], t_) <= t_) out.push_back(j);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ColouringGraphView build_view(const Graph& g, int k, int t, std::size_t max_colourings) {
    const ListAssignment L = ListAssignment::uniform(g.vertex_count(), k);
    std::vector<Colouring> colourings = enumerate_colourings(g, L, {}, max_colourings);
    return ColouringGraphView(g, k, t, std::move(colourings));
}

VertexStatus classify_vertex(const ColouringGraphView& view, const Colouring& tau, Vertex v) {
    view.graph().check_vertex(v);
    const int idx = view.index_of(tau);
    const int k = view.k();
    VertexStatus status{view.t(), true, true, true, true,
                        std::vector<int>(k, -1), std::vector<int>(k, -1)};

    // Loose / rigid are about the closed neighbourhood of tau in H.
    status.loose_witness[tau.values[v]] = idx;
    for (int nbr : view.neighbours_of(idx)) {
        const int colour = view.colourings()[nbr].values[v];
        if (status.loose_witness[colour] == -1) status.loose_witness[colour] = nbr;
        if (colour != tau.values[v]) status.rigid = false;
    }
    for (int c = 0; c < k; ++c)
        if (status.loose_witness[c] == -1) status.loose = false;

    // Thawed / frozen are about the projection of tau's t-cluster onto v.
    for (int member : view.cluster_members(view.cluster_of(idx))) {
        const int colour = view.colourings()[member].values[v];
        if (status.thawed_witness[colour] == -1) status.thawed_witness[colour] = member;
        if (colour != tau.values[v]) status.frozen = false;
    }
    for (int c = 0; c < k; ++c)
        if (status.thawed_witness[c] == -1) status.thawed = false;
    return status;
}

int count_frozen(const ColouringGraphView& view, const Colouring& tau) {
    const int idx = view.index_of(tau);
    const auto& members = view.cluster_members(view.cluster_of(idx));
    int frozen = 0;
    for (Vertex v = 0; v < view.graph().vertex_count(); ++v) {
        bool constant = true;
        for (int member : members)
            if (view.colourings()[member].values[v] != tau.values[v]) {
                constant = false;
                break;
            }
        if (constant) ++frozen;
    }
    return frozen;
}

ForceColourOutcome force_colour(const Graph& g, const ListAssignment& L, const Colouring& sigma,
                                Vertex v, int x) {
    g.check_vertex(v);
    if (!L.contains(v, x)) throw DomainError("force_colour: x not in L(v)");
    if (!sigma.is_total()) throw DomainError("force_colour: total colouring required");
    if (!is_proper(g, L, sigma)) throw DomainError("force_colour: sigma is not proper");
    if (!is_independent_set(g, g.neighbours(v)))
        throw DomainError("force_colour: N(v) must be an independent set");

    Colouring out = sigma;
    out.values[v] = Colouring::kUncoloured;
    for (Vertex u : g.neighbours(v)) {
        AvailableList avail = available_list(g, L, out, u);
        std::erase(avail.colours, x);
        if (avail.colours.empty()) return ForceColourOutcome{std::nullopt, u};
        const int keep = sigma.values[u];
        const bool can_keep = std::binary_search(avail.colours.begin(), avail.colours.end(), keep);
        out.values[u] = can_keep ? keep : avail.colours.front();
    }
    out.values[v] = x;
    return ForceColourOutcome{out, -1};
}

LayeredRecolourResult layered_recolour(const Graph& g, int k, const Colouring& sigma0, Vertex v,
                                       int g_depth) {
    g.check_vertex(v);
    if (g_depth < 1) throw DomainError("layered_recolour: g_depth >= 1 required");
    const auto girth_value = girth(g);
    if (girth_value && *girth_value < 2 * g_depth + 2)
        throw DomainError("layered_recolour: girth must be at least 2*g_depth + 2");
    const ListAssignment L = ListAssignment::uniform(g.vertex_count(), k);
    if (!sigma0.is_total() || !is_proper(g, L, sigma0))
        throw DomainError("layered_recolour: sigma0 must be a proper total k-colouring");

    const auto layers = distance_layers(g, v, g_depth);
    std::vector<int> layer_of(g.vertex_count(), -1);
    for (int i = 0; i <= g_depth; ++i)
        for (Vertex w : layers[i]) layer_of[w] = i;

    LayeredRecolourResult result;
    Colouring sigma = sigma0;
    for (int i = 1; i <= g_depth - 1; ++i) {
        const int child_layer = g_depth - i + 1;
        const int parent_layer = g_depth - i;
        for (Vertex w : layers[parent_layer]) {
            // Recolour the children of w so that, together, they occupy as
            // few colours as possible: each takes the colour already used
            // most often among its processed siblings (ties to smallest).
            std::vector<int> usage(k, 0);
            for (Vertex c : g.neighbours(w)) {
                if (layer_of[c] != child_layer) continue;
                const AvailableList avail = available_list(g, L, sigma, c);
                int best = avail.colours.front();
                for (int colour : avail.colours)
                    if (usage[colour] > usage[best]) best = colour;
                sigma.values[c] = best;
                ++usage[best];
            }
        }
        result.sequence.push_back(sigma);
    }
    for (Vertex u : g.neighbours(v))
        result.final_list_orders.emplace_back(u, available_list(g, L, sigma, u).order());
    return result;
}

RecolourWitness looseness_radius_witness(const Graph& g, int k, const Colouring& sigma0,
                                         Vertex v, int x, int g_depth) {
    const LayeredRecolourResult layered = layered_recolour(g, k, sigma0, v, g_depth);
    const Colouring& staged = layered.final_colouring(sigma0);
    const ListAssignment L = ListAssignment::uniform(g.vertex_count(), k);
    const ForceColourOutcome forced = force_colour(g, L, staged, v, x);
    if (!forced.success()) return RecolourWitness{std::nullopt, forced.stuck};

    std::vector<Vertex> changed;
    for (Vertex w = 0; w < g.vertex_count(); ++w)
        if (forced.result->values[w] != sigma0.values[w]) changed.push_back(w);

    // All changes live within distance g_depth of v.
    const auto layers = distance_layers(g, v, g_depth);
    std::vector<bool> in_range(g.vertex_count(), false);
    for (const auto& layer : layers)
        for (Vertex w : layer) in_range[w] = true;
    for (Vertex w : changed)
        if (!in_range[w])
            throw Error("looseness_radius_witness: change escaped the recolouring radius");
    return RecolourWitness{changed, -1};
}

}  // namespace chroma
