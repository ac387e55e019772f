#include "chroma/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "chroma/bounds.hpp"

namespace chroma {

namespace {

/// Backtracking engine with forward checking over a dense colour remap.
///
/// Counting branches on 2-core vertices (fewest remaining colours first,
/// ties to the smallest id); once the uncoloured remainder is a forest the
/// count closes by tree DP, so trees, cycles and sparse remainders never
/// explode. Lexicographic enumeration uses the fixed id order instead so
/// the output stream is reproducible.
class Engine {
  public:
    Engine(const Graph& g, const ListAssignment& L, const EnumerationOptions& opts)
        : g_(g), opts_(opts), n_(g.vertex_count()) {
        if (L.size() != n_) throw DomainError("enumeration: list assignment size mismatch");
        active_.assign(n_, true);
        if (opts.active) {
            if (static_cast<int>(opts.active->size()) != n_)
                throw DomainError("enumeration: active mask size mismatch");
            active_ = *opts.active;
        }

        std::vector<int> universe;
        for (Vertex v = 0; v < n_; ++v)
            if (active_[v])
                universe.insert(universe.end(), L.at(v).begin(), L.at(v).end());
        std::sort(universe.begin(), universe.end());
        universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
        colour_of_dense_ = universe;
        colours_ = static_cast<int>(universe.size());
        auto dense_of = [&](int colour) {
            return static_cast<int>(std::lower_bound(universe.begin(), universe.end(), colour) -
                                    universe.begin());
        };

        lists_.assign(n_, {});
        member_.assign(n_, std::vector<std::uint8_t>(colours_, 0));
        for (Vertex v = 0; v < n_; ++v) {
            if (!active_[v]) continue;
            for (int colour : L.at(v)) {
                const int c = dense_of(colour);
                lists_[v].push_back(c);
                member_[v][c] = 1;
            }
        }

        conflicts_.assign(n_, std::vector<int>(colours_, 0));
        avail_.assign(n_, 0);
        assigned_.assign(n_, -1);
        uu_degree_.assign(n_, 0);
        for (Vertex v = 0; v < n_; ++v) {
            if (!active_[v]) continue;
            avail_[v] = static_cast<int>(lists_[v].size());
            for (Vertex w : g.neighbours(v))
                if (active_[w]) ++uu_degree_[v];
        }
        pin_feasible_ = true;
        if (opts.pinned) {
            const Colouring& pin = *opts.pinned;
            if (pin.size() != n_) throw DomainError("enumeration: pinned colouring size mismatch");
            for (Vertex v = 0; v < n_ && pin_feasible_; ++v) {
                if (!pin.is_coloured(v)) continue;
                if (!active_[v])
                    throw DomainError("enumeration: pinned colour on inactive vertex");
                const int colour = pin.values[v];
                const auto it = std::lower_bound(universe.begin(), universe.end(), colour);
                if (it == universe.end() || *it != colour || !member_[v][dense_of(colour)]) {
                    pin_feasible_ = false;
                    break;
                }
                const int c = dense_of(colour);
                if (conflicts_[v][c] > 0) {
                    pin_feasible_ = false;
                    break;
                }
                assign(v, c);
            }
        }
    }

    BigInt count() {
        if (!pin_feasible_) return 0;
        return count_rec();
    }

    void enumerate(const std::function<bool(const Colouring&)>& visit) {
        if (!pin_feasible_) return;
        order_.clear();
        for (Vertex v = 0; v < n_; ++v)
            if (active_[v] && assigned_[v] == -1) order_.push_back(v);
        stop_ = false;
        enumerate_rec(0, visit);
    }

  private:
    void charge_node() {
        if (++nodes_ > opts_.node_budget)
            throw BudgetExceeded("enumeration: node budget exceeded");
    }

    void assign(Vertex v, int c) {
        assigned_[v] = c;
        for (Vertex w : g_.neighbours(v)) {
            if (!active_[w]) continue;
            --uu_degree_[w];
            if (assigned_[w] != -1) continue;
            if (member_[w][c] && conflicts_[w][c]++ == 0) --avail_[w];
        }
    }

    void unassign(Vertex v) {
        const int c = assigned_[v];
        for (Vertex w : g_.neighbours(v)) {
            if (!active_[w]) continue;
            ++uu_degree_[w];
            if (assigned_[w] != -1) continue;
            if (member_[w][c] && --conflicts_[w][c] == 0) ++avail_[w];
        }
        assigned_[v] = -1;
    }

    bool pending(Vertex v) const { return active_[v] && assigned_[v] == -1; }

    /// Strips degree-<=1 vertices of the unassigned remainder; what's left
    /// is its 2-core. Empty core means the remainder is a forest.
    std::vector<Vertex> remaining_two_core() const {
        std::vector<int> deg(n_, 0);
        std::vector<Vertex> strip;
        for (Vertex v = 0; v < n_; ++v) {
            if (!pending(v)) continue;
            deg[v] = uu_degree_[v];
            if (deg[v] <= 1) strip.push_back(v);
        }
        std::vector<bool> removed(n_, false);
        while (!strip.empty()) {
            const Vertex v = strip.back();
            strip.pop_back();
            if (removed[v]) continue;
            removed[v] = true;
            for (Vertex w : g_.neighbours(v))
                if (pending(w) && !removed[w] && --deg[w] == 1) strip.push_back(w);
        }
        std::vector<Vertex> core;
        for (Vertex v = 0; v < n_; ++v)
            if (pending(v) && !removed[v]) core.push_back(v);
        return core;
    }

    /// Exact count of the forest remainder: per component, the classic
    /// two-table tree DP over the per-vertex allowed colour sets.
    BigInt forest_count() {
        BigInt result = 1;
        std::vector<bool> visited(n_, false);
        std::vector<std::vector<BigInt>> ways(n_);
        for (Vertex root = 0; root < n_ && result != 0; ++root) {
            if (!pending(root) || visited[root]) continue;
            // DFS order with parents.
            std::vector<Vertex> order{root};
            std::vector<Vertex> parent(n_, -1);
            visited[root] = true;
            for (std::size_t i = 0; i < order.size(); ++i)
                for (Vertex w : g_.neighbours(order[i]))
                    if (pending(w) && !visited[w]) {
                        visited[w] = true;
                        parent[w] = order[i];
                        order.push_back(w);
                    }
            // ways[v][c] = proper completions of v's subtree with v -> c.
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                const Vertex v = *it;
                ways[v].assign(colours_, 0);
                for (int c : lists_[v]) {
                    if (conflicts_[v][c] > 0) continue;
                    BigInt w = 1;
                    for (Vertex u : g_.neighbours(v)) {
                        if (!pending(u) || parent[u] != v) continue;
                        BigInt sum = 0;
                        for (int cu = 0; cu < colours_; ++cu)
                            if (cu != c) sum += ways[u][cu];
                        w *= sum;
                        if (w == 0) break;
                    }
                    ways[v][c] = w;
                }
            }
            BigInt component = 0;
            for (int c = 0; c < colours_; ++c) component += ways[root][c];
            result *= component;
        }
        return result;
    }

    BigInt count_rec() {
        charge_node();
        const std::vector<Vertex> core = remaining_two_core();
        if (core.empty()) return forest_count();
        // Branch on the core vertex with the fewest remaining colours so
        // that assignments keep breaking cycles.
        Vertex best = core.front();
        for (Vertex v : core)
            if (avail_[v] < avail_[best] || (avail_[v] == avail_[best] && v < best)) best = v;
        if (avail_[best] == 0) return 0;
        BigInt total = 0;
        for (int c : lists_[best]) {
            if (conflicts_[best][c] > 0) continue;
            assign(best, c);
            total += count_rec();
            unassign(best);
        }
        return total;
    }

    void enumerate_rec(std::size_t idx, const std::function<bool(const Colouring&)>& visit) {
        if (stop_) return;
        charge_node();
        if (idx == order_.size()) {
            if (!visit(current_colouring())) stop_ = true;
            return;
        }
        const Vertex v = order_[idx];
        for (int c : lists_[v]) {
            if (conflicts_[v][c] > 0) continue;
            assign(v, c);
            enumerate_rec(idx + 1, visit);
            unassign(v);
            if (stop_) return;
        }
    }

    Colouring current_colouring() const {
        Colouring out = Colouring::uncoloured(n_);
        for (Vertex v = 0; v < n_; ++v)
            if (assigned_[v] != -1) out.values[v] = colour_of_dense_[assigned_[v]];
        return out;
    }

    const Graph& g_;
    const EnumerationOptions& opts_;
    int n_;
    int colours_ = 0;
    std::vector<bool> active_;
    std::vector<int> colour_of_dense_;
    std::vector<std::vector<int>> lists_;
    std::vector<std::vector<std::uint8_t>> member_;
    std::vector<std::vector<int>> conflicts_;
    std::vector<int> avail_;
    std::vector<int> assigned_;
    std::vector<int> uu_degree_;
    bool pin_feasible_ = true;
    std::uint64_t nodes_ = 0;
    std::vector<Vertex> order_;
    bool stop_ = false;
};

}  // namespace

CountResult count_colourings(const Graph& g, const ListAssignment& L,
                             const EnumerationOptions& opts) {
    Engine engine(g, L, opts);
    BigInt count = engine.count();
    return CountResult{count, log_of(count)};
}

void for_each_colouring(const Graph& g, const ListAssignment& L,
                        const std::function<bool(const Colouring&)>& visit,
                        const EnumerationOptions& opts) {
    Engine engine(g, L, opts);
    engine.enumerate(visit);
}

std::vector<Colouring> enumerate_colourings(const Graph& g, const ListAssignment& L,
                                            const EnumerationOptions& opts,
                                            std::size_t max_colourings) {
    std::vector<Colouring> out;
    bool overflow = false;
    for_each_colouring(
        g, L,
        [&](const Colouring& sigma) {
            if (out.size() >= max_colourings) {
                overflow = true;
                return false;
            }
            out.push_back(sigma);
            return true;
        },
        opts);
    if (overflow) throw BudgetExceeded("enumerate_colourings: colouring budget exceeded");
    return out;
}

long long extension_count(const Graph& g, const ListAssignment& L, const Colouring& sigma,
                          Vertex v) {
    g.check_vertex(v);
    if (sigma.size() != g.vertex_count()) throw DomainError("extension_count: size mismatch");
    if (sigma.is_coloured(v)) throw DomainError("extension_count: v must be uncoloured");
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        if (u != v && !sigma.is_coloured(u))
            throw DomainError("extension_count: sigma must colour all of G \\ v");
    if (!is_proper(g, L, sigma)) throw DomainError("extension_count: sigma is not proper");
    return available_list(g, L, sigma, v).order();
}

CountResult conditioned_count(const Graph& g, const ListAssignment& L,
                              const std::function<bool(const Colouring&)>& pred,
                              const EnumerationOptions& opts) {
    BigInt count = 0;
    for_each_colouring(
        g, L,
        [&](const Colouring& sigma) {
            if (pred(sigma)) ++count;
            return true;
        },
        opts);
    return CountResult{count, log_of(count)};
}

namespace {

// Deletion-contraction on adjacency bitmask rows; vertices stay in place and
// `alive` masks out contracted ones.
class ChromaticCounter {
  public:
    ChromaticCounter(const Graph& g, int k) : k_(k), n_(g.vertex_count()) {
        if (n_ > 63) throw DomainError("chromatic_count: graphs up to 63 vertices only");
        rows_.assign(n_, 0);
        for (const auto& [u, v] : g.edges()) {
            rows_[u] |= std::uint64_t{1} << v;
            rows_[v] |= std::uint64_t{1} << u;
        }
        alive_ = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
    }

    BigInt run() { return rec(); }

  private:
    // First edge that closes a cycle under union-find, or {-1,-1} if acyclic.
    std::pair<int, int> find_cycle_edge() const {
        std::vector<int> root(n_);
        std::iota(root.begin(), root.end(), 0);
        auto find = [&](int x) {
            while (root[x] != x) x = root[x] = root[root[x]];
            return x;
        };
        for (int u = 0; u < n_; ++u) {
            if (!(alive_ >> u & 1)) continue;
            std::uint64_t nbrs = rows_[u] & alive_ & ~((std::uint64_t{2} << u) - 1);
            while (nbrs) {
                const int v = std::countr_zero(nbrs);
                nbrs &= nbrs - 1;
                const int ru = find(u), rv = find(v);
                if (ru == rv) return {u, v};
                root[ru] = rv;
            }
        }
        return {-1, -1};
    }

    BigInt rec() {
        const auto [eu, ev] = find_cycle_edge();
        if (eu == -1) {
            // Forest: k^{components} (k-1)^{edges}.
            int vertices = 0, edges = 0;
            for (int u = 0; u < n_; ++u) {
                if (!(alive_ >> u & 1)) continue;
                ++vertices;
                edges += std::popcount(rows_[u] & alive_);
            }
            edges /= 2;
            BigInt result = 1;
            for (int i = 0; i < vertices - edges; ++i) result *= k_;
            for (int i = 0; i < edges; ++i) result *= (k_ - 1);
            return result;
        }
        // Delete.
        rows_[eu] &= ~(std::uint64_t{1} << ev);
        rows_[ev] &= ~(std::uint64_t{1} << eu);
        const BigInt deleted = rec();
        // Contract ev into eu (edge already removed).
        const std::uint64_t saved_u = rows_[eu];
        const std::uint64_t saved_v = rows_[ev];
        std::vector<int> touched;
        std::uint64_t nbrs = rows_[ev] & alive_;
        while (nbrs) {
            const int w = std::countr_zero(nbrs);
            nbrs &= nbrs - 1;
            if (!(rows_[eu] >> w & 1)) {
                rows_[eu] |= std::uint64_t{1} << w;
                rows_[w] |= std::uint64_t{1} << eu;
                touched.push_back(w);
            }
        }
        alive_ &= ~(std::uint64_t{1} << ev);
        const BigInt contracted = rec();
        // Undo contraction.
        alive_ |= std::uint64_t{1} << ev;
        for (int w : touched) {
            rows_[w] &= ~(std::uint64_t{1} << eu);
        }
        rows_[eu] = saved_u;
        rows_[ev] = saved_v;
        // Undo deletion.
        rows_[eu] |= std::uint64_t{1} << ev;
        rows_[ev] |= std::uint64_t{1} << eu;
        return deleted - contracted;
    }

    int k_;
    int n_;
    std::vector<std::uint64_t> rows_;
    std::uint64_t alive_ = 0;
};

}  // namespace

BigInt chromatic_count(const Graph& g, int k) {
    if (k < 0) throw DomainError("chromatic_count: negative k");
    if (g.vertex_count() == 0) return 1;
    if (k == 0) return g.vertex_count() == 0 ? 1 : 0;
    ChromaticCounter counter(g, k);
    return counter.run();
}

double free_energy(const Graph& g, int k) {
    if (g.vertex_count() == 0) throw DomainError("free_energy: empty graph");
    const BigInt count = chromatic_count(g, k);
    if (count == 0) return -std::numeric_limits<double>::infinity();
    return log_of(count) / g.vertex_count();
}

double relative_free_energy(const Graph& g, int k, int max_deg) {
    const double tree = tree_free_energy(max_deg, k);
    if (std::fabs(tree) < 1e-12)
        throw DomainError("relative_free_energy: tree free energy is zero");
    return free_energy(g, k) / tree;
}

}  // namespace chroma
