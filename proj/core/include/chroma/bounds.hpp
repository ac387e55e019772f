#pragma once

#include <string>
#include <vector>

#include "chroma/graph.hpp"

namespace chroma {

/// A named hypothesis of a bound, reported rather than enforced: the
/// evaluator still computes values outside the proven regime, with the flag
/// attached for honesty.
struct Hypothesis {
    std::string name;
    bool satisfied;
};

struct BoundValue {
    double value;
    double log_value;
    std::vector<Hypothesis> hypotheses;

    bool hypotheses_ok() const {
        for (const auto& h : hypotheses)
            if (!h.satisfied) return false;
        return true;
    }
};

/// Lambert W on [0, inf): the inverse of w -> w e^w. Halley iteration with a
/// bisection fallback; |W e^W - x| <= 1e-12 * max(1, x).
double lambert_w(double x);

/// (1 + 2/ln rho) deg / W(deg / ell) with rho = Delta/(d+1); the list size
/// above which the expected available list at a degree-`deg` vertex stays
/// >= ell. deg = 0 returns the limit (1 + 2/ln rho) * ell.
BoundValue required_list_size(int deg, double d, int max_deg, double ell);

/// k0 e^{-(1+1/t) d / k0} with k0 = k - expected_short: lower bound on the
/// expected number of colours missed by d independent uniform draws.
double coupon_lower_bound(int k, int d, int t, double expected_short);

/// Same bound with d replaced by the number of vertices of the recoloured
/// subgraph (the list-colouring generalisation).
double generalised_coupon_bound(int k, int n_vertices, int t, double expected_short);

/// min(1, t / ell): tail bound for P(ell_sigma(u) <= t).
double list_tail_bound(double t, double ell);

/// n (ln q - 0.5 ln(D/(d+1))) where q, D are the geometric means of the
/// q-values and the degrees: log of the counting lower bound.
BoundValue count_lower_bound(const Graph& g, const std::vector<double>& q_values, double d);

/// Per-vertex floor of the q-values in the counting bound:
/// (1 + 1/ln rho) deg / W(deg / ((d+1)(ln rho)^3)).
double count_bound_q_floor(int deg, double d, int max_deg);

/// m ln(1-1/k) + n ln((1-delta)k) with delta = (4/k) e^{Delta/k}; flagged
/// vacuous (log = -inf) when delta >= 1.
BoundValue bbck_lower_bound(long long n, long long m, int k, int max_deg);

/// ln(k (1-1/k)^{Delta/2}): free energy per variable of the infinite
/// Delta-regular tree.
double tree_free_energy(int max_deg, int k);

/// [e^delta / (1+delta)^{1+delta}]^mu.
double chernoff_upper(double mu, double delta);

/// e^{-sigma}; only valid for sigma >= 6 mu (guarded).
double chernoff_upper_abs(double mu, double sigma);

/// e^{-delta^2 ell / 2}, doubled variant x2, capped at 1.
double lower_tail_bound(double delta, double ell, bool doubled);

/// -s^{ceil(f/2)} as a log-probability.
double percolation_bound(int s, int f);

/// s >= max{6 p Delta, 3 ln Delta}.
bool percolation_hypothesis_check(double p, int max_deg, int s);

/// (1 + 2/ln rho) Delta / W(rho / (ln rho)^3) with rho = min{f/3, Delta/3}:
/// explicit list-chromatic-number bound for graphs whose neighbourhoods
/// span at most Delta^2/f edges.
double vu_list_bound(int max_deg, double f);

/// prod_v (1 - 1/(|L(v)| - deg(v))): lower bound on the probability that a
/// uniform proper L-colouring avoids a fixed colour everywhere.
double avoidance_probability_lower(const std::vector<double>& list_sizes,
                                   const std::vector<double>& degrees);

}  // namespace chroma
