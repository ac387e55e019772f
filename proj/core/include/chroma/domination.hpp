#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "chroma/colouring.hpp"
#include "chroma/enumeration.hpp"
#include "chroma/graph.hpp"
#include "chroma/numbers.hpp"
#include "chroma/rng.hpp"
#include "chroma/stats.hpp"

namespace chroma {

/// A finite probability space carrying a family of binary variables: each
/// outcome has an exact rational probability and a bitmask of variable
/// values. All domination checks reduce to exact arithmetic over this.
struct OutcomeSpace {
    int variable_count = 0;

    struct Outcome {
        BigRat probability;
        std::uint32_t mask;
    };

    std::vector<Outcome> outcomes;
};

/// One indicator per (vertex, threshold): X = 1{ell_sigma(vertex) <= threshold}
/// under the uniform proper colouring measure.
struct ColouringEvent {
    Vertex vertex;
    int threshold;
};

/// Builds the outcome space of the uniform distribution over proper
/// colourings (optionally of an induced subgraph via opts.active).
OutcomeSpace colouring_outcome_space(const Graph& g, const ListAssignment& L,
                                     const std::vector<ColouringEvent>& family,
                                     const EnumerationOptions& opts = {});

/// `count` independent Bernoulli(p) variables, p exact rational.
OutcomeSpace independent_bernoulli_space(int count, const BigRat& p);

/// E[prod_{i in J} X_i] for every J, indexed by subset bitmask (entry 0 is
/// the empty product, 1). Exact rationals; capped at 20 variables.
std::vector<BigRat> subset_product_expectations(const OutcomeSpace& space);

struct DominationReport {
    bool dominated;
    std::uint32_t worst_subset;  // maximises E[prod] - p^|J| (ties: first)
    BigRat worst_expectation;
    double worst_bound;
    double slack;  // E - p^|J| at the worst subset; > 0 means violated
    std::optional<bool> independent_index_set;
};

/// Checks E[prod_J X] <= p^|J| for every J. To rule out spurious violations
/// from float error, p is promoted upward by one ulp and compared exactly.
DominationReport check_ber_domination(const std::vector<BigRat>& expectations,
                                      int variable_count, double p);

struct NegativeCorrelationReport {
    bool holds;
    BigRat joint;              // P(every colour of X lands on N(v))
    BigRat product;            // prod of the single-event probabilities
    std::vector<BigRat> singles;
    BigInt extension_count;
};

/// Events E_x = "x appears on N(v)" under the uniform proper extension of
/// sigma0 (a colouring of G \ N[v]) to G \ v. Verifies
/// P(AND E_x) <= prod P(E_x) exactly.
NegativeCorrelationReport check_negative_correlation(const Graph& g, const ListAssignment& L,
                                                     const Colouring& sigma0, Vertex v,
                                                     const std::vector<int>& colour_set);

struct RenormalisationReport {
    bool dominated;
    double q;  // Chernoff bound on P(R_i = 1)
    DominationReport block_report;
    bool input_checked;
    bool input_dominated;
};

/// Corollary-style renormalisation: R_i = 1{sum_{j in Q_i} X_j > (1+delta) p
/// |Q_i|}; verifies that (R_i) are Ber(q)-dominated with q from the
/// multiplicative Chernoff bound at mu = p |Q_i|.
RenormalisationReport renormalise_and_check(const OutcomeSpace& space,
                                            const std::vector<std::vector<int>>& partition,
                                            double delta, double p);

struct EmpiricalTail {
    double estimate;
    double ci_low;
    double ci_high;
    long long successes;
    long long trials;
};

/// Monte-Carlo fallback for event probabilities when enumeration exceeds
/// budget: exact-sampler draws with a 95% Wilson interval.
EmpiricalTail tail_probability_empirical(const Graph& g, const ListAssignment& L,
                                         const std::function<bool(const Colouring&)>& event,
                                         long long trials, SplitMix64& rng);

}  // namespace chroma
