#include "chroma/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "chroma/bounds.hpp"
#include "chroma/sampling.hpp"

namespace chroma {

namespace {

void validate(const PercolationInstance& inst) {
    if (inst.arity < 1) throw DomainError("percolation: arity >= 1 required");
    if (inst.depth < 1) throw DomainError("percolation: depth >= 1 required");
    if (inst.threshold < 1) throw DomainError("percolation: threshold >= 1 required");
    if (inst.p < 0 || inst.p > 1) throw DomainError("percolation: p outside [0,1]");
    if (inst.leaf_count() > (std::uint64_t{1} << 26))
        throw DomainError("percolation: too many leaves");
}

}  // namespace

std::uint64_t PercolationInstance::leaf_count() const {
    std::uint64_t leaves = 1;
    for (int i = 0; i < depth; ++i) leaves *= static_cast<std::uint64_t>(arity);
    return leaves;
}

std::uint64_t PercolationInstance::node_count() const {
    std::uint64_t total = 0, level = 1;
    for (int i = 0; i <= depth; ++i) {
        total += level;
        level *= static_cast<std::uint64_t>(arity);
    }
    return total;
}

PropagationResult propagate(const PercolationInstance& inst, const std::vector<bool>& leaf_mask) {
    validate(inst);
    if (leaf_mask.size() != inst.leaf_count())
        throw DomainError("propagate: leaf mask length mismatch");
    PropagationResult result;
    result.active_by_level.assign(inst.depth + 1, {});
    result.active_by_level[inst.depth] = leaf_mask;
    for (int level = inst.depth - 1; level >= 0; --level) {
        const auto& below = result.active_by_level[level + 1];
        auto& here = result.active_by_level[level];
        here.assign(below.size() / inst.arity, false);
        for (std::size_t i = 0; i < here.size(); ++i) {
            int active_children = 0;
            for (int c = 0; c < inst.arity; ++c)
                active_children += below[i * inst.arity + c];
            here[i] = active_children >= inst.threshold;
        }
    }
    result.root_active = result.active_by_level[0][0];
    return result;
}

std::vector<bool> adversarial_leaf_mask(const PercolationInstance& inst) {
    validate(inst);
    if (inst.threshold > inst.arity)
        throw DomainError("adversarial_leaf_mask: threshold exceeds arity");
    // Leaves of the s-ary subtree that always takes the first s children.
    std::vector<std::uint64_t> frontier{0};
    for (int level = 0; level < inst.depth; ++level) {
        std::vector<std::uint64_t> next;
        next.reserve(frontier.size() * inst.threshold);
        for (std::uint64_t node : frontier)
            for (int c = 0; c < inst.threshold; ++c)
                next.push_back(node * inst.arity + c);
        frontier = std::move(next);
    }
    std::vector<bool> mask(inst.leaf_count(), false);
    for (std::uint64_t leaf : frontier) mask[leaf] = true;
    return mask;
}

std::vector<bool> colouring_leaf_model(const Graph& g, int k, const std::vector<Vertex>& layer,
                                       int threshold, SplitMix64& rng) {
    const ListAssignment L = ListAssignment::uniform(g.vertex_count(), k);
    SamplerConfig cfg;
    cfg.seed = rng.next();
    const Colouring sigma = sample_uniform(g, L, cfg);
    std::vector<bool> mask(layer.size(), false);
    for (std::size_t i = 0; i < layer.size(); ++i)
        mask[i] = available_list(g, L, sigma, layer[i]).order() <= threshold;
    return mask;
}

std::vector<bool> draw_leaf_mask(const PercolationInstance& inst, SplitMix64& rng) {
    validate(inst);
    switch (inst.model) {
        case PercolationInstance::Model::iid: {
            const double p = to_double(inst.p);
            std::vector<bool> mask(inst.leaf_count());
            for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = rng.bernoulli(p);
            return mask;
        }
        case PercolationInstance::Model::explicit_mask:
            if (inst.mask.size() != inst.leaf_count())
                throw DomainError("draw_leaf_mask: explicit mask length mismatch");
            return inst.mask;
        case PercolationInstance::Model::adversarial_subtree:
            return adversarial_leaf_mask(inst);
        case PercolationInstance::Model::colouring_derived: {
            if (!inst.source_graph)
                throw DomainError("draw_leaf_mask: colouring model needs a source graph");
            if (inst.leaf_vertices.size() != inst.leaf_count())
                throw DomainError("draw_leaf_mask: leaf vertex map length mismatch");
            return colouring_leaf_model(*inst.source_graph, inst.source_k, inst.leaf_vertices,
                                        inst.list_threshold, rng);
        }
    }
    throw DomainError("draw_leaf_mask: unknown model");
}

namespace {

bool run_trial(const PercolationInstance& inst, SplitMix64& rng, std::vector<bool>& mask_buffer,
               double& leaf_rate_accum) {
    if (inst.model == PercolationInstance::Model::iid) {
        const double p = to_double(inst.p);
        std::uint64_t active = 0;
        for (std::size_t i = 0; i < mask_buffer.size(); ++i) {
            mask_buffer[i] = rng.bernoulli(p);
            active += mask_buffer[i];
        }
        leaf_rate_accum += static_cast<double>(active) / static_cast<double>(mask_buffer.size());
    } else {
        mask_buffer = draw_leaf_mask(inst, rng);
        std::uint64_t active = 0;
        for (bool b : mask_buffer) active += b;
        leaf_rate_accum += static_cast<double>(active) / static_cast<double>(mask_buffer.size());
    }
    return propagate(inst, mask_buffer).root_active;
}

}  // namespace

RootEstimate estimate_root_probability(const PercolationInstance& inst, std::uint64_t trials,
                                       SplitMix64& rng, int jobs) {
    validate(inst);
    if (trials < 1) throw DomainError("estimate_root_probability: trials >= 1 required");
    if (inst.model == PercolationInstance::Model::adversarial_subtree ||
        inst.model == PercolationInstance::Model::explicit_mask)
        throw DomainError("estimate_root_probability: deterministic leaf model, nothing to estimate");
    jobs = std::max(1, jobs);

    std::vector<std::uint64_t> hits_per_job(jobs, 0);
    std::vector<double> rate_per_job(jobs, 0.0);
    auto worker = [&](int job) {
        std::vector<bool> buffer(inst.leaf_count());
        double rate = 0.0;
        std::uint64_t hits = 0;
        for (std::uint64_t trial = job; trial < trials; trial += jobs) {
            SplitMix64 trial_rng = rng.derive(trial);
            if (run_trial(inst, trial_rng, buffer, rate)) ++hits;
        }
        hits_per_job[job] = hits;
        rate_per_job[job] = rate;
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
        for (auto& th : pool) th.join();
    }
    std::uint64_t hits = 0;
    double rate = 0.0;
    for (int j = 0; j < jobs; ++j) {
        hits += hits_per_job[j];
        rate += rate_per_job[j];
    }

    RootEstimate out;
    out.trials = trials;
    out.hits = hits;
    out.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    out.std_error =
        std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
    // The analytic bound needs s >= 2 and Delta >= 2; outside that regime it
    // is vacuous (+inf) and the hypothesis flag is off.
    out.bound_log = inst.threshold >= 2
                        ? percolation_bound(inst.threshold, inst.depth)
                        : std::numeric_limits<double>::infinity();
    out.leaf_rate = rate / static_cast<double>(trials);
    const double p_for_flag = inst.model == PercolationInstance::Model::iid
                                  ? to_double(inst.p)
                                  : out.leaf_rate;
    out.hypothesis_ok = inst.arity >= 2 && inst.threshold >= 2 &&
                        percolation_hypothesis_check(p_for_flag, inst.arity, inst.threshold);
    return out;
}

BigRat exact_root_probability_small(const PercolationInstance& inst) {
    validate(inst);
    if (inst.model != PercolationInstance::Model::iid)
        throw DomainError("exact_root_probability_small: iid leaf model required");
    // Children of a node are i.i.d. active, so the activation probability
    // composes level by level through a binomial tail.
    BigRat q = inst.p;
    for (int level = 0; level < inst.depth; ++level) {
        const BigRat one_minus = BigRat(1) - q;
        BigRat tail = 0;
        for (int i = inst.threshold; i <= inst.arity; ++i)
            tail += BigRat(binomial(inst.arity, i)) * pow_rat(q, i) *
                    pow_rat(one_minus, inst.arity - i);
        q = tail;
    }
    return q;
}

}  // namespace chroma
