#include "chroma/domination.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "chroma/bounds.hpp"
#include "chroma/sampling.hpp"

namespace chroma {

OutcomeSpace colouring_outcome_space(const Graph& g, const ListAssignment& L,
                                     const std::vector<ColouringEvent>& family,
                                     const EnumerationOptions& opts) {
    if (family.size() > 20)
        throw DomainError("colouring_outcome_space: at most 20 variables (2^20 subsets)");
    for (const auto& event : family) {
        g.check_vertex(event.vertex);
        if (event.threshold < 0) throw DomainError("colouring_outcome_space: negative threshold");
    }
    // One pass over the colourings: accumulate the count of each mask, then
    // normalise.
    std::vector<BigInt> mask_count(std::size_t{1} << family.size(), 0);
    BigInt total = 0;
    for_each_colouring(
        g, L,
        [&](const Colouring& sigma) {
            std::uint32_t mask = 0;
            for (std::size_t i = 0; i < family.size(); ++i) {
                const int ell = available_list(g, L, sigma, family[i].vertex).order();
                if (ell <= family[i].threshold) mask |= std::uint32_t{1} << i;
            }
            ++mask_count[mask];
            ++total;
            return true;
        },
        opts);
    if (total == 0) throw DomainError("colouring_outcome_space: no proper colourings");
    OutcomeSpace space;
    space.variable_count = static_cast<int>(family.size());
    for (std::uint32_t mask = 0; mask < mask_count.size(); ++mask)
        if (mask_count[mask] > 0)
            space.outcomes.push_back({BigRat(mask_count[mask], total), mask});
    return space;
}

OutcomeSpace independent_bernoulli_space(int count, const BigRat& p) {
    if (count < 0 || count > 20)
        throw DomainError("independent_bernoulli_space: 0 <= count <= 20 required");
    if (p < 0 || p > 1) throw DomainError("independent_bernoulli_space: p outside [0,1]");
    OutcomeSpace space;
    space.variable_count = count;
    const BigRat q = BigRat(1) - p;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << count); ++mask) {
        BigRat prob = 1;
        for (int i = 0; i < count; ++i) prob *= (mask >> i & 1) ? p : q;
        if (prob != 0) space.outcomes.push_back({prob, mask});
    }
    return space;
}

std::vector<BigRat> subset_product_expectations(const OutcomeSpace& space) {
    if (space.variable_count < 0 || space.variable_count > 20)
        throw DomainError("subset_product_expectations: at most 20 variables");
    const std::size_t size = std::size_t{1} << space.variable_count;
    // E[prod_{i in J} X_i] = P(J subset of mask): superset-sum transform of
    // the mask distribution.
    std::vector<BigRat> table(size, BigRat(0));
    for (const auto& outcome : space.outcomes) table[outcome.mask] += outcome.probability;
    for (int bit = 0; bit < space.variable_count; ++bit)
        for (std::size_t mask = 0; mask < size; ++mask)
            if (!(mask >> bit & 1)) table[mask] += table[mask | (std::size_t{1} << bit)];
    return table;
}

DominationReport check_ber_domination(const std::vector<BigRat>& expectations,
                                      int variable_count, double p) {
    if (p < 0.0 || p > 1.0) throw DomainError("check_ber_domination: p outside [0,1]");
    const std::size_t size = std::size_t{1} << variable_count;
    if (expectations.size() != size)
        throw DomainError("check_ber_domination: expectations must cover all subsets");
    // Conservative rounding: promote p upward by one ulp, then compare in
    // exact rational arithmetic. A reported violation is therefore real.
    const BigRat p_up = rational_of(std::nextafter(p, 2.0));
    DominationReport report{true, 0, BigRat(1), 1.0, 0.0, std::nullopt};
    bool first = true;
    for (std::uint32_t mask = 0; mask < size; ++mask) {
        const int order = std::popcount(mask);
        const BigRat bound = pow_rat(p_up, static_cast<unsigned>(order));
        if (expectations[mask] > bound) report.dominated = false;
        const double slack = to_double(expectations[mask] - bound);
        if (first || slack > report.slack) {
            first = false;
            report.slack = slack;
            report.worst_subset = mask;
            report.worst_expectation = expectations[mask];
            report.worst_bound = to_double(bound);
        }
    }
    return report;
}

NegativeCorrelationReport check_negative_correlation(const Graph& g, const ListAssignment& L,
                                                     const Colouring& sigma0, Vertex v,
                                                     const std::vector<int>& colour_set) {
    g.check_vertex(v);
    if (sigma0.size() != g.vertex_count())
        throw DomainError("check_negative_correlation: size mismatch");
    std::vector<bool> in_closed(g.vertex_count(), false);
    in_closed[v] = true;
    for (Vertex u : g.neighbours(v)) in_closed[u] = true;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (in_closed[u] && sigma0.is_coloured(u))
            throw DomainError("check_negative_correlation: sigma0 must be uncoloured on N[v]");
        if (!in_closed[u] && !sigma0.is_coloured(u))
            throw DomainError("check_negative_correlation: sigma0 must colour all of G \\ N[v]");
    }

    // Uniform extensions of sigma0 to G \ v.
    EnumerationOptions opts;
    std::vector<bool> active(g.vertex_count(), true);
    active[v] = false;
    opts.active = active;
    opts.pinned = sigma0;

    BigInt total = 0;
    std::vector<BigInt> single(colour_set.size(), 0);
    BigInt joint = 0;
    for_each_colouring(
        g, L,
        [&](const Colouring& sigma) {
            ++total;
            bool all = true;
            for (std::size_t i = 0; i < colour_set.size(); ++i) {
                bool used = false;
                for (Vertex u : g.neighbours(v))
                    if (sigma.values[u] == colour_set[i]) {
                        used = true;
                        break;
                    }
                if (used) ++single[i];
                else all = false;
            }
            if (all) ++joint;
            return true;
        },
        opts);
    if (total == 0) throw DomainError("check_negative_correlation: no valid extension");

    NegativeCorrelationReport report;
    report.extension_count = total;
    report.joint = BigRat(joint, total);
    report.product = 1;
    for (std::size_t i = 0; i < colour_set.size(); ++i) {
        report.singles.push_back(BigRat(single[i], total));
        report.product *= report.singles.back();
    }
    report.holds = report.joint <= report.product;
    return report;
}

RenormalisationReport renormalise_and_check(const OutcomeSpace& space,
                                            const std::vector<std::vector<int>>& partition,
                                            double delta, double p) {
    if (delta <= 0.0) throw DomainError("renormalise_and_check: delta > 0 required");
    if (p < 0.0 || p > 1.0) throw DomainError("renormalise_and_check: p outside [0,1]");
    if (partition.empty() || partition.size() > 20)
        throw DomainError("renormalise_and_check: 1..20 blocks required");
    const std::size_t block_size = partition.front().size();
    if (block_size == 0) throw DomainError("renormalise_and_check: empty block");
    std::vector<bool> used(space.variable_count, false);
    for (const auto& block : partition) {
        if (block.size() != block_size)
            throw DomainError("renormalise_and_check: blocks must have equal order");
        for (int j : block) {
            if (j < 0 || j >= space.variable_count)
                throw DomainError("renormalise_and_check: block index out of range");
            if (used[j]) throw DomainError("renormalise_and_check: blocks must be disjoint");
            used[j] = true;
        }
    }

    RenormalisationReport report;
    report.q = chernoff_upper(p * static_cast<double>(block_size), delta);
    report.input_checked = space.variable_count <= 20;
    report.input_dominated = false;
    if (report.input_checked) {
        const auto expectations = subset_product_expectations(space);
        report.input_dominated =
            check_ber_domination(expectations, space.variable_count, p).dominated;
    }

    const double threshold = (1.0 + delta) * p * static_cast<double>(block_size);
    OutcomeSpace blocks;
    blocks.variable_count = static_cast<int>(partition.size());
    for (const auto& outcome : space.outcomes) {
        std::uint32_t r_mask = 0;
        for (std::size_t i = 0; i < partition.size(); ++i) {
            int sum = 0;
            for (int j : partition[i]) sum += outcome.mask >> j & 1;
            if (static_cast<double>(sum) > threshold) r_mask |= std::uint32_t{1} << i;
        }
        blocks.outcomes.push_back({outcome.probability, r_mask});
    }
    const auto block_expectations = subset_product_expectations(blocks);
    report.block_report =
        check_ber_domination(block_expectations, blocks.variable_count, report.q);
    report.dominated = report.block_report.dominated;
    return report;
}

EmpiricalTail tail_probability_empirical(const Graph& g, const ListAssignment& L,
                                         const std::function<bool(const Colouring&)>& event,
                                         long long trials, SplitMix64& rng) {
    if (trials <= 0) throw DomainError("tail_probability_empirical: trials must be positive");
    long long hits = 0;
    for (long long i = 0; i < trials; ++i) {
        SamplerConfig cfg;
        cfg.seed = rng.derive(static_cast<std::uint64_t>(i)).seed();
        if (event(sample_uniform(g, L, cfg))) ++hits;
    }
    const WilsonInterval ci = wilson_interval(hits, trials);
    return EmpiricalTail{ci.point, ci.low, ci.high, hits, trials};
}

}  // namespace chroma
