#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "chroma/colouring.hpp"
#include "chroma/graph.hpp"
#include "chroma/numbers.hpp"
#include "chroma/rng.hpp"

namespace chroma {

/// s-upward percolation on the rooted arity^depth tree: leaves are activated
/// by the leaf model, and a node activates iff at least `threshold` of its
/// children are active. The tree is implicit (index arithmetic on
/// level-ordered arrays), never materialised as a Graph.
struct PercolationInstance {
    enum class Model { iid, adversarial_subtree, explicit_mask, colouring_derived };

    int arity = 2;
    int depth = 1;
    int threshold = 1;
    Model model = Model::iid;

    BigRat p = BigRat(1, 2);      // iid leaf activation probability
    std::vector<bool> mask;       // explicit_mask

    // colouring_derived: leaf i is active iff the sampled uniform colouring
    // leaves at most `list_threshold` colours available at leaf_vertices[i].
    std::shared_ptr<const Graph> source_graph;
    int source_k = 0;
    int list_threshold = 0;
    std::vector<Vertex> leaf_vertices;

    std::uint64_t leaf_count() const;
    std::uint64_t node_count() const;
};

struct PropagationResult {
    /// active_by_level[j] has arity^j entries; level 0 is the root.
    std::vector<std::vector<bool>> active_by_level;
    bool root_active;
};

/// Deterministic bottom-up pass; stabilises in `depth` steps.
PropagationResult propagate(const PercolationInstance& instance,
                            const std::vector<bool>& leaf_mask);

/// The leaves of the leftmost threshold-ary subtree: the cheapest adversary
/// that still activates the root (threshold^depth leaves).
std::vector<bool> adversarial_leaf_mask(const PercolationInstance& instance);

/// One leaf mask drawn from the instance's leaf model.
std::vector<bool> draw_leaf_mask(const PercolationInstance& instance, SplitMix64& rng);

/// Leaf mask derived from one uniform proper colouring of g: entry i is set
/// iff ell_sigma(layer[i]) <= threshold. `layer` supplies the vertex <-> leaf
/// order.
std::vector<bool> colouring_leaf_model(const Graph& g, int k, const std::vector<Vertex>& layer,
                                       int threshold, SplitMix64& rng);

struct RootEstimate {
    double estimate;
    double std_error;
    double bound_log;      // log of the analytic root-activation bound
    bool hypothesis_ok;    // s >= max{6 p Delta, 3 ln Delta}
    double leaf_rate;      // measured mean leaf activation (the p used for
                           // the flag under the colouring-derived model)
    std::uint64_t trials;
    std::uint64_t hits;
};

/// Monte-Carlo estimate of P(root active) under the iid or
/// colouring-derived leaf model. Trials use derived RNG streams, so the
/// result is independent of `jobs`.
RootEstimate estimate_root_probability(const PercolationInstance& instance,
                                       std::uint64_t trials, SplitMix64& rng, int jobs = 1);

/// Exact P(root active) under iid leaves: per level, a node is active with
/// probability P(Binomial(arity, child_prob) >= threshold), composed from
/// the leaves up in exact rational arithmetic.
BigRat exact_root_probability_small(const PercolationInstance& instance);

}  // namespace chroma
