#include <doctest.h>

#include <map>
#include <set>

#include "chroma/enumeration.hpp"
#include "chroma/graph_gen.hpp"
#include "test_util.hpp"

using namespace chroma;

namespace {

/// Brute-force count over every assignment in the list product; the
/// reference oracle for small instances.
BigInt brute_force_count(const Graph& g, const ListAssignment& L) {
    const int n = g.vertex_count();
    Colouring sigma = Colouring::uncoloured(n);
    BigInt count = 0;
    const std::function<void(int)> walk = [&](int v) {
        if (v == n) {
            if (is_proper(g, L, sigma)) ++count;
            return;
        }
        for (int c : L.at(v)) {
            sigma.values[v] = c;
            walk(v + 1);
        }
        sigma.values[v] = Colouring::kUncoloured;
    };
    walk(0);
    return count;
}

/// Contraction by vertex merge, for the deletion-contraction identity test
/// only: merge v into u, dropping the edge and deduping.
Graph contract_edge(const Graph& g, Vertex u, Vertex v) {
    std::vector<std::pair<int, int>> edges;
    auto rename = [&](Vertex w) {
        if (w == v) w = u;
        return w > v ? w - 1 : w;
    };
    for (const auto& [a, b] : g.edges()) {
        const int ra = rename(a), rb = rename(b);
        if (ra != rb) edges.emplace_back(ra, rb);
    }
    return Graph(g.vertex_count() - 1, edges);
}

}  // namespace

TEST_CASE("count_colourings on the worked examples") {
    CHECK(count_colourings(make_path(3), ListAssignment::uniform(3, 3)).count == 12);
    CHECK(count_colourings(make_complete(3), ListAssignment::uniform(3, 3)).count == 6);
    CHECK(count_colourings(make_cycle(5), ListAssignment::uniform(5, 3)).count ==
          test::cycle_colour_count(5, 3));
    CHECK(test::cycle_colour_count(5, 3) == 30);

    // Empty graph: the empty colouring.
    CHECK(count_colourings(Graph(0, {}), ListAssignment::uniform(0, 3)).count == 1);
    // Forest closed form on P3: 27 * (2/3)^2 = 12.
    CHECK(test::forest_colour_count(3, 2, 3) == 12);
}

TEST_CASE("count_colourings matches brute force on random list instances") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const Graph g = test::random_graph(6, 0.4, rng);
        std::vector<std::vector<int>> lists(6);
        for (auto& list : lists) {
            const int size = 1 + rng.pick_index(4);
            for (int i = 0; i < size; ++i) list.push_back(rng.pick_index(5));
        }
        const ListAssignment L(lists);
        CHECK(count_colourings(g, L).count == brute_force_count(g, L));
    }
}

TEST_CASE("CountResult log_count is consistent") {
    const auto r = count_colourings(make_cycle(8), ListAssignment::uniform(8, 4));
    CHECK(r.log_count == doctest::Approx(log_of(r.count)).epsilon(1e-12));
    const auto zero = count_colourings(make_complete(4), ListAssignment::uniform(4, 3));
    CHECK(zero.count == 0);
    CHECK(zero.log_count == -std::numeric_limits<double>::infinity());
}

TEST_CASE("enumerate_colourings: order, distinctness, properness") {
    const Graph single(1, {});
    CHECK(enumerate_colourings(single, ListAssignment({{0, 1}})).size() == 2);

    const Graph edge = make_path(2);
    const auto two = enumerate_colourings(edge, ListAssignment::uniform(2, 2));
    REQUIRE(two.size() == 2);
    CHECK(two[0] == Colouring({0, 1}));  // lexicographic order
    CHECK(two[1] == Colouring({1, 0}));

    const Graph k3 = make_complete(3);
    const ListAssignment L = ListAssignment::uniform(3, 3);
    const auto cols = enumerate_colourings(k3, L);
    CHECK(cols.size() == 6);
    std::set<std::vector<int>> distinct;
    for (const auto& c : cols) {
        CHECK(is_proper(k3, L, c));
        distinct.insert(c.values);
    }
    CHECK(distinct.size() == 6);
}

TEST_CASE("enumeration stream is lexicographic and matches count everywhere") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = test::random_graph(6, 0.5, rng);
        const ListAssignment L = ListAssignment::uniform(6, 3);
        const auto cols = enumerate_colourings(g, L);
        CHECK(BigInt(cols.size()) == count_colourings(g, L).count);
        for (std::size_t i = 1; i < cols.size(); ++i)
            CHECK(cols[i - 1].values < cols[i].values);
    }
}

TEST_CASE("node budget is enforced") {
    EnumerationOptions opts;
    opts.node_budget = 2;
    CHECK_THROWS_AS(count_colourings(make_cycle(10), ListAssignment::uniform(10, 3), opts),
                    BudgetExceeded);
    CHECK_THROWS_AS(
        enumerate_colourings(make_cycle(8), ListAssignment::uniform(8, 3), {}, 10),
        BudgetExceeded);
}

TEST_CASE("extension_count") {
    const Graph isolated(1, {});
    CHECK(extension_count(isolated, ListAssignment::uniform(1, 3), Colouring::uncoloured(1), 0) ==
          3);

    const Graph c5 = make_cycle(5);
    Colouring sigma({Colouring::kUncoloured, 0, 2, 0, 1});
    CHECK(extension_count(c5, ListAssignment::uniform(5, 3), sigma, 0) == 1);

    const Graph star = make_complete_bipartite(1, 6);
    Colouring leaves = Colouring::uncoloured(7);
    for (int i = 1; i < 7; ++i) leaves.values[i] = 0;
    CHECK(extension_count(star, ListAssignment::uniform(7, 26), leaves, 0) == 25);

    Colouring improper({Colouring::kUncoloured, 0, 0, 0, 0});
    CHECK_THROWS_AS(extension_count(c5, ListAssignment::uniform(5, 3), improper, 0), DomainError);
}

TEST_CASE("count equals the sum of extension counts over C(G \\ v)") {
    SplitMix64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = test::random_graph(7, 0.35, rng);
        const ListAssignment L = ListAssignment::uniform(7, 4);
        const BigInt total = count_colourings(g, L).count;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            EnumerationOptions opts;
            std::vector<bool> active(7, true);
            active[v] = false;
            opts.active = active;
            BigInt sum = 0;
            for_each_colouring(
                g, L,
                [&](const Colouring& sigma) {
                    sum += extension_count(g, L, sigma, v);
                    return true;
                },
                opts);
            CHECK(sum == total);
        }
    }
}

TEST_CASE("conditioned_count") {
    const Graph c5 = make_cycle(5);
    const ListAssignment L = ListAssignment::uniform(5, 3);
    const auto always = conditioned_count(c5, L, [](const Colouring&) { return true; });
    CHECK(always.count == count_colourings(c5, L).count);
    const auto never = conditioned_count(c5, L, [](const Colouring&) { return false; });
    CHECK(never.count == 0);

    // Tail of short lists on C5 \ v, validated against the induction bound
    // (t / ell_hat) * |C(C5 \ v)| with ell_hat = count(C5)/count(C5\v).
    EnumerationOptions opts;
    std::vector<bool> active(5, true);
    active[0] = false;
    opts.active = active;
    const Vertex u = 1;  // a neighbour of the removed vertex
    const BigInt removed_total = count_colourings(c5, L, opts).count;
    CHECK(removed_total == 24);  // P4 at k=3
    for (int t = 1; t <= 2; ++t) {
        const auto tail = conditioned_count(
            c5, L,
            [&](const Colouring& sigma) {
                return available_list(c5, L, sigma, u).order() <= t;
            },
            opts);
        const double ell_hat = 30.0 / 24.0;
        CHECK(to_double(BigRat(tail.count)) <=
              t / ell_hat * to_double(BigRat(removed_total)) + 1e-9);
    }
}

TEST_CASE("chromatic_count agrees with closed forms and the backtracker") {
    for (int n = 3; n <= 9; ++n)
        for (int k = 2; k <= 5; ++k)
            CHECK(chromatic_count(make_cycle(n), k) == test::cycle_colour_count(n, k));
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; k <= 7; ++k)
            CHECK(chromatic_count(make_complete(n), k) == test::falling_factorial(k, n));

    SplitMix64 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        const Graph g = test::random_graph(7, 0.4, rng);
        const int k = 2 + rng.pick_index(4);
        CHECK(chromatic_count(g, k) == count_colourings(g, ListAssignment::uniform(7, k)).count);
    }

    // Star at large k: closed form k (k-1)^6.
    const Graph star = make_complete_bipartite(1, 6);
    BigInt expected = 26;
    for (int i = 0; i < 6; ++i) expected *= 25;
    CHECK(chromatic_count(star, 26) == expected);
    CHECK(count_colourings(star, ListAssignment::uniform(7, 26)).count == expected);
}

TEST_CASE("deletion-contraction identity on random graphs") {
    SplitMix64 rng(37);
    for (int trial = 0; trial < 12; ++trial) {
        const Graph g = test::random_graph(7, 0.4, rng);
        if (g.edge_count() == 0) continue;
        const auto edges = g.edges();
        const auto [u, v] = edges[rng.pick_index(static_cast<int>(edges.size()))];
        std::vector<std::pair<int, int>> without;
        for (const auto& e : edges)
            if (e != std::make_pair(u, v)) without.push_back(e);
        const Graph deleted(g.vertex_count(), without);
        const Graph contracted = contract_edge(g, u, v);
        for (int k = 2; k <= 4; ++k) {
            const BigInt lhs = count_colourings(g, ListAssignment::uniform(7, k)).count;
            const BigInt rhs =
                count_colourings(deleted, ListAssignment::uniform(7, k)).count -
                count_colourings(contracted, ListAssignment::uniform(6, k)).count;
            CHECK(lhs == rhs);
            CHECK(chromatic_count(g, k) ==
                  chromatic_count(deleted, k) - chromatic_count(contracted, k));
        }
    }
}

TEST_CASE("free energy") {
    CHECK(free_energy(Graph(4, {}), 5) == doctest::Approx(std::log(5.0)));
    CHECK(free_energy(make_complete(3), 3) == doctest::Approx(std::log(6.0) / 3.0));
    CHECK(free_energy(make_path(3), 3) == doctest::Approx(std::log(12.0) / 3.0));
    CHECK(free_energy(make_complete(4), 3) == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(free_energy(Graph(0, {}), 3), DomainError);
}

TEST_CASE("relative free energy") {
    // Delta = 0: h = f / ln k.
    CHECK(relative_free_energy(Graph(3, {}), 4, 0) == doctest::Approx(1.0));
    // C4 at k=3: f = ln(18)/4, tree term ln 2.
    CHECK(relative_free_energy(make_cycle(4), 3, 2) ==
          doctest::Approx(std::log(18.0) / (4.0 * std::log(2.0))));
    // Stars: h is close to but not exactly 1 (sanity, not equality).
    const double h = relative_free_energy(make_complete_bipartite(1, 6), 26, 6);
    CHECK(h > 0.9);
    CHECK(h < 1.1);
    CHECK(h != doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("pinned and active options") {
    const Graph c4 = make_cycle(4);
    const ListAssignment L = ListAssignment::uniform(4, 3);
    EnumerationOptions opts;
    Colouring pin = Colouring::uncoloured(4);
    pin.values[0] = 0;
    opts.pinned = pin;
    // By symmetry a third of the 18 colourings fix vertex 0 to colour 0.
    CHECK(count_colourings(c4, L, opts).count == 6);

    // Improper pins yield zero, not an error.
    pin.values[1] = 0;
    opts.pinned = pin;
    CHECK(count_colourings(c4, L, opts).count == 0);

    // Out-of-list pins as well.
    EnumerationOptions opts2;
    Colouring pin2 = Colouring::uncoloured(4);
    pin2.values[0] = 17;
    opts2.pinned = pin2;
    CHECK(count_colourings(c4, L, opts2).count == 0);

    // Active mask: C5 minus a vertex is P4.
    EnumerationOptions opts3;
    opts3.active = std::vector<bool>{false, true, true, true, true};
    CHECK(count_colourings(make_cycle(5), ListAssignment::uniform(5, 3), opts3).count == 24);
}
