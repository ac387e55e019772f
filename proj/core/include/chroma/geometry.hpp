#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "chroma/colouring.hpp"
#include "chroma/graph.hpp"

namespace chroma {

/// The distance-t k-colouring graph on C_k(G): vertices are the proper
/// colourings (in enumeration order), two distinct colourings are adjacent
/// when their Hamming distance is at most t, and t-clusters are the
/// connected components.
///
/// Edges are implicit. Candidate neighbours are retrieved through a
/// pigeonhole index: the vertex set is split into t+1 blocks, and two
/// colourings within distance t must agree entirely on at least one block,
/// so only bucket-mates are ever compared. The index accelerates but never
/// changes results.
class ColouringGraphView {
  public:
    ColouringGraphView(Graph g, int k, int t, std::vector<Colouring> colourings);

    const Graph& graph() const { return graph_; }
    int k() const { return k_; }
    int t() const { return t_; }
    const std::vector<Colouring>& colourings() const { return colourings_; }
    int size() const { return static_cast<int>(colourings_.size()); }

    int index_of(const Colouring& tau) const;  // throws if tau is not in C_k(G)

    /// Indices at Hamming distance <= t from colouring idx (excluding idx).
    std::vector<int> neighbours_of(int idx) const;

    int cluster_of(int idx) const { return cluster_id_[idx]; }
    int cluster_count() const { return static_cast<int>(cluster_members_.size()); }
    const std::vector<int>& cluster_members(int cluster) const {
        return cluster_members_[cluster];
    }
    int cluster_size(int cluster) const {
        return static_cast<int>(cluster_members_[cluster].size());
    }

  private:
    Graph graph_;  // owned: the view outlives any caller-side temporary
    int k_;
    int t_;
    std::vector<Colouring> colourings_;
    std::vector<int> cluster_id_;
    std::vector<std::vector<int>> cluster_members_;
    std::vector<std::vector<Vertex>> blocks_;
    std::vector<std::unordered_map<std::uint64_t, std::vector<int>>> buckets_;
    std::unordered_map<std::uint64_t, std::vector<int>> by_hash_;

    std::uint64_t projection_hash(const Colouring& c, const std::vector<Vertex>& block) const;
    std::uint64_t full_hash(const Colouring& c) const;
    void build_index();
    void build_clusters();
};

ColouringGraphView build_view(const Graph& g, int k, int t,
                              std::size_t max_colourings = 100000);

/// The four local flags of a vertex in a colouring, with one witness
/// colouring index per colour for the loose/thawed directions (-1 when the
/// colour is unreachable).
struct VertexStatus {
    int t;
    bool loose;
    bool thawed;
    bool rigid;
    bool frozen;
    std::vector<int> loose_witness;
    std::vector<int> thawed_witness;
};

VertexStatus classify_vertex(const ColouringGraphView& view, const Colouring& tau, Vertex v);

/// Number of vertices of g whose colour is constant across tau's t-cluster.
int count_frozen(const ColouringGraphView& view, const Colouring& tau);

struct ForceColourOutcome {
    std::optional<Colouring> result;
    Vertex stuck = -1;  // the neighbour whose list had no colour besides x

    bool success() const { return result.has_value(); }
};

/// Recolours each u in N(v) away from x (keeping its colour when possible),
/// then sets v to x. Succeeds iff every u in N(v) has a spare colour other
/// than x; on success the output is proper and differs from sigma only
/// inside N[v]. Requires N(v) independent, sigma proper total, x in L(v).
ForceColourOutcome force_colour(const Graph& g, const ListAssignment& L, const Colouring& sigma,
                                Vertex v, int x);

struct LayeredRecolourResult {
    /// sigma_1 .. sigma_{g_depth-1}; empty when g_depth = 1.
    std::vector<Colouring> sequence;
    /// ell at each u in N(v) under the final colouring, ascending by vertex.
    std::vector<std::pair<Vertex, int>> final_list_orders;

    const Colouring& final_colouring(const Colouring& sigma0) const {
        return sequence.empty() ? sigma0 : sequence.back();
    }
};

/// Deterministic layer-by-layer recolouring towards v: step i rewrites the
/// layer at distance g_depth-i+1 so as to enlarge the available lists one
/// layer below, by greedy colour reuse among siblings (ties to the smallest
/// colour). Requires girth(g) >= 2 g_depth + 2 so that each rewritten vertex
/// has exactly one neighbour in the layer below.
LayeredRecolourResult layered_recolour(const Graph& g, int k, const Colouring& sigma0, Vertex v,
                                       int g_depth);

struct RecolourWitness {
    std::optional<std::vector<Vertex>> changed;  // vertices where the output differs
    Vertex stuck = -1;

    bool success() const { return changed.has_value(); }
};

/// layered_recolour followed by force_colour; on success reports the set of
/// changed vertices, which is guaranteed to lie within distance g_depth
/// of v.
RecolourWitness looseness_radius_witness(const Graph& g, int k, const Colouring& sigma0,
                                         Vertex v, int x, int g_depth);

}  // namespace chroma
