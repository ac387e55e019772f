#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "chroma/colouring.hpp"
#include "chroma/graph.hpp"
#include "chroma/numbers.hpp"

namespace chroma {

/// Knobs shared by the exhaustive operations.
///
/// `active`, when set, restricts the colouring problem to the induced
/// subgraph on the active vertices: inactive vertices stay uncoloured and
/// impose no constraints. This is how callers work with C(G \ v), C(G \ J)
/// and friends without re-indexing vertices.
///
/// `pinned` fixes a partial colouring before the search starts; results
/// range over its proper extensions (0 of them if the pin itself is
/// improper or out-of-list).
struct EnumerationOptions {
    std::uint64_t node_budget = 1'000'000'000;
    std::optional<std::vector<bool>> active;
    std::optional<Colouring> pinned;
};

/// Exact count plus its natural log (-inf sentinel for zero).
struct CountResult {
    BigInt count;
    double log_count;
};

CountResult count_colourings(const Graph& g, const ListAssignment& L,
                             const EnumerationOptions& opts = {});

/// Visits every proper colouring exactly once, in lexicographic order
/// (vertex id order, ascending colour). Return false from the visitor to
/// stop early.
void for_each_colouring(const Graph& g, const ListAssignment& L,
                        const std::function<bool(const Colouring&)>& visit,
                        const EnumerationOptions& opts = {});

/// Materialises the colouring stream; throws BudgetExceeded past
/// `max_colourings`.
std::vector<Colouring> enumerate_colourings(const Graph& g, const ListAssignment& L,
                                            const EnumerationOptions& opts = {},
                                            std::size_t max_colourings = 100000);

/// Number of extensions of a proper colouring of G \ v to G; always equals
/// the order of the available list at v.
long long extension_count(const Graph& g, const ListAssignment& L, const Colouring& sigma,
                          Vertex v);

CountResult conditioned_count(const Graph& g, const ListAssignment& L,
                              const std::function<bool(const Colouring&)>& pred,
                              const EnumerationOptions& opts = {});

/// Exact number of proper k-colourings by deletion-contraction (the value
/// of the chromatic polynomial at k). Independent of the backtracking route
/// and far faster when k is large; the two are cross-checked in the tests.
BigInt chromatic_count(const Graph& g, int k);

/// f(G, k) = (1/n) ln |C_k(G)|; -inf when there are no proper colourings.
double free_energy(const Graph& g, int k);

/// h(G, k) = f(G, k) / ln(k (1 - 1/k)^{max_deg/2}).
double relative_free_energy(const Graph& g, int k, int max_deg);

}  // namespace chroma
