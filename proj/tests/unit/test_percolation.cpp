#include <doctest.h>

#include <cmath>

#include "chroma/bounds.hpp"
#include "chroma/enumeration.hpp"
#include "chroma/graph_gen.hpp"
#include "chroma/percolation.hpp"
#include "test_util.hpp"

using namespace chroma;

namespace {

PercolationInstance iid_instance(int arity, int depth, int threshold, const BigRat& p) {
    PercolationInstance inst;
    inst.arity = arity;
    inst.depth = depth;
    inst.threshold = threshold;
    inst.model = PercolationInstance::Model::iid;
    inst.p = p;
    return inst;
}

/// Exhaustive-mask oracle: sum of p^|A| (1-p)^{leaves-|A|} over all leaf
/// sets A that activate the root.
BigRat exhaustive_root_probability(const PercolationInstance& inst) {
    const std::uint64_t leaves = inst.leaf_count();
    REQUIRE(leaves <= 20);
    BigRat total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << leaves); ++mask) {
        std::vector<bool> leaf_mask(leaves);
        int active = 0;
        for (std::uint64_t i = 0; i < leaves; ++i) {
            leaf_mask[i] = mask >> i & 1;
            active += leaf_mask[i];
        }
        if (!propagate(inst, leaf_mask).root_active) continue;
        total += pow_rat(inst.p, active) *
                 pow_rat(BigRat(1) - inst.p, static_cast<unsigned>(leaves) - active);
    }
    return total;
}

}  // namespace

TEST_CASE("propagate thresholds") {
    // s = 1: root active iff any leaf is.
    const auto or_inst = iid_instance(3, 2, 1, BigRat(1, 2));
    std::vector<bool> one(9, false);
    one[5] = true;
    CHECK(propagate(or_inst, one).root_active);
    CHECK_FALSE(propagate(or_inst, std::vector<bool>(9, false)).root_active);

    // s = arity: root active iff all leaves are.
    const auto and_inst = iid_instance(3, 2, 3, BigRat(1, 2));
    CHECK(propagate(and_inst, std::vector<bool>(9, true)).root_active);
    std::vector<bool> missing(9, true);
    missing[0] = false;
    CHECK_FALSE(propagate(and_inst, missing).root_active);

    CHECK_THROWS_AS(propagate(and_inst, std::vector<bool>(5, true)), DomainError);
}

TEST_CASE("adversarial s-ary subtree activates the root with s^f leaves") {
    for (int arity : {3, 4})
        for (int depth : {1, 2, 3})
            for (int s = 1; s <= arity; ++s) {
                auto inst = iid_instance(arity, depth, s, BigRat(1, 2));
                inst.model = PercolationInstance::Model::adversarial_subtree;
                const auto mask = adversarial_leaf_mask(inst);
                long long active = 0;
                for (bool b : mask) active += b;
                long long expected = 1;
                for (int i = 0; i < depth; ++i) expected *= s;
                CHECK(active == expected);
                CHECK(propagate(inst, mask).root_active);
            }
}

TEST_CASE("propagate is monotone in the leaf mask") {
    SplitMix64 rng(3);
    const auto inst = iid_instance(3, 2, 2, BigRat(1, 2));
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<bool> small(9), big(9);
        for (int i = 0; i < 9; ++i) {
            small[i] = rng.bernoulli(0.4);
            big[i] = small[i] || rng.bernoulli(0.3);
        }
        const auto small_result = propagate(inst, small);
        const auto big_result = propagate(inst, big);
        for (int level = 0; level <= 2; ++level)
            for (std::size_t i = 0; i < small_result.active_by_level[level].size(); ++i)
                if (small_result.active_by_level[level][i])
                    CHECK(big_result.active_by_level[level][i]);
    }
}

TEST_CASE("exact_root_probability_small: worked examples") {
    CHECK(exact_root_probability_small(iid_instance(2, 1, 1, BigRat(1, 2))) == BigRat(3, 4));
    CHECK(exact_root_probability_small(iid_instance(2, 1, 2, BigRat(1, 2))) == BigRat(1, 4));
    CHECK(exact_root_probability_small(iid_instance(2, 2, 2, BigRat(1, 2))) == BigRat(1, 16));

    auto bad = iid_instance(2, 1, 1, BigRat(1, 2));
    bad.model = PercolationInstance::Model::explicit_mask;
    CHECK_THROWS_AS(exact_root_probability_small(bad), DomainError);
}

TEST_CASE("exact root probability equals exhaustive mask summation") {
    const std::vector<BigRat> ps{BigRat(1, 4), BigRat(1, 2), BigRat(3, 4)};
    for (const auto& [arity, depth] :
         std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {2, 2}, {3, 2}, {4, 2}, {2, 3}, {2, 4}}) {
        std::uint64_t leaves = 1;
        for (int i = 0; i < depth; ++i) leaves *= arity;
        if (leaves > 16) continue;
        for (int s = 1; s <= arity; ++s)
            for (const auto& p : ps) {
                const auto inst = iid_instance(arity, depth, s, p);
                CHECK(exact_root_probability_small(inst) == exhaustive_root_probability(inst));
            }
    }
}

TEST_CASE("Monte-Carlo estimate within 4 standard errors of exact") {
    SplitMix64 rng(2718);
    for (const auto& inst :
         {iid_instance(2, 2, 1, BigRat(1, 4)), iid_instance(3, 2, 2, BigRat(1, 2)),
          iid_instance(4, 1, 2, BigRat(3, 4))}) {
        const double exact = to_double(exact_root_probability_small(inst));
        const auto est = estimate_root_probability(inst, 40000, rng);
        const double stderr_floor = std::max(est.std_error, 1e-9);
        CHECK(std::fabs(est.estimate - exact) <= 4.0 * stderr_floor);
    }
}

TEST_CASE("estimates are reproducible and independent of the job count") {
    const auto inst = iid_instance(3, 2, 2, BigRat(1, 3));
    SplitMix64 a(42), b(42);
    const auto serial = estimate_root_probability(inst, 20000, a, 1);
    const auto parallel = estimate_root_probability(inst, 20000, b, 4);
    CHECK(serial.hits == parallel.hits);
    CHECK(serial.estimate == parallel.estimate);
}

TEST_CASE("bound holds whenever the hypothesis check passes") {
    // Delta = 12, f = 2, s = 8, p = 1/9 (the bound's checkable instance,
    // smaller trial count than the acceptance run).
    const auto inst = iid_instance(12, 2, 8, BigRat(1, 9));
    SplitMix64 rng(5);
    const auto est = estimate_root_probability(inst, 50000, rng);
    CHECK(est.hypothesis_ok);
    CHECK(est.bound_log == doctest::Approx(-8.0));
    CHECK(est.estimate <= std::exp(est.bound_log) + 3.0 * est.std_error);

    auto deterministic = iid_instance(2, 1, 1, BigRat(1, 2));
    deterministic.model = PercolationInstance::Model::adversarial_subtree;
    CHECK_THROWS_AS(estimate_root_probability(deterministic, 100, rng), DomainError);
}

TEST_CASE("colouring-derived leaf model") {
    SplitMix64 rng(17);
    const Graph c6 = make_cycle(6);
    const ListAssignment L = ListAssignment::uniform(6, 3);

    // t >= k: every leaf active; t = 0: none (lists are never empty).
    const std::vector<Vertex> layer{0, 3};
    CHECK(colouring_leaf_model(c6, 3, layer, 3, rng) == std::vector<bool>{true, true});
    CHECK(colouring_leaf_model(c6, 3, layer, 0, rng) == std::vector<bool>{false, false});

    // Activation rate matches the exact conditioned-count ratio.
    const int t = 1;
    const auto conditioned = conditioned_count(c6, L, [&](const Colouring& sigma) {
        return available_list(c6, L, sigma, 0).order() <= t;
    });
    const double exact = to_double(BigRat(conditioned.count, count_colourings(c6, L).count));
    int hits = 0;
    const int trials = 4000;
    for (int i = 0; i < trials; ++i) {
        SplitMix64 trial_rng = rng.derive(i);
        hits += colouring_leaf_model(c6, 3, layer, t, trial_rng)[0];
    }
    const double rate = static_cast<double>(hits) / trials;
    const double se = std::sqrt(exact * (1 - exact) / trials);
    CHECK(std::fabs(rate - exact) <= 4.0 * se);

    // Wired into a percolation instance.
    PercolationInstance inst;
    inst.arity = 2;
    inst.depth = 1;
    inst.threshold = 2;
    inst.model = PercolationInstance::Model::colouring_derived;
    inst.source_graph = std::make_shared<Graph>(c6);
    inst.source_k = 3;
    inst.list_threshold = 1;
    inst.leaf_vertices = layer;
    SplitMix64 est_rng(77);
    const auto est = estimate_root_probability(inst, 500, est_rng);
    CHECK(est.estimate >= 0.0);
    CHECK(est.estimate <= 1.0);
    CHECK(est.leaf_rate > 0.0);
}
