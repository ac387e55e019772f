#pragma once

#include <cmath>
#include <vector>

#include "chroma/colouring.hpp"
#include "chroma/graph.hpp"
#include "chroma/numbers.hpp"
#include "chroma/rng.hpp"

namespace chroma::test {

inline Graph petersen() {
    // Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
        edges.emplace_back(i, i + 5);
    }
    return Graph(10, edges);
}

/// Random forest: vertex i attaches to a uniform earlier vertex with
/// probability keep_prob, otherwise starts a new component.
inline Graph random_forest(int n, double keep_prob, SplitMix64& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i)
        if (rng.bernoulli(keep_prob)) edges.emplace_back(static_cast<int>(rng.bounded(i)), i);
    return Graph(n, edges);
}

inline Graph random_tree(int n, SplitMix64& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(static_cast<int>(rng.bounded(i)), i);
    return Graph(n, edges);
}

inline Graph random_graph(int n, double p, SplitMix64& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) edges.emplace_back(i, j);
    return Graph(n, edges);
}

/// Chromatic polynomial of the n-cycle at k: (k-1)^n + (-1)^n (k-1).
inline BigInt cycle_colour_count(int n, int k) {
    BigInt term = 1;
    for (int i = 0; i < n; ++i) term *= (k - 1);
    if (n % 2 == 0) return BigInt(term + (k - 1));
    return BigInt(term - (k - 1));
}

/// k (k-1) ... (k-n+1).
inline BigInt falling_factorial(int k, int n) {
    BigInt r = 1;
    for (int i = 0; i < n; ++i) r *= (k - i);
    return r;
}

/// Exact forest count k^n (1-1/k)^m = k^{n-m} (k-1)^m.
inline BigInt forest_colour_count(int n, int m, int k) {
    BigInt r = 1;
    for (int i = 0; i < n - m; ++i) r *= k;
    for (int i = 0; i < m; ++i) r *= (k - 1);
    return r;
}

/// Test-side Lambert W by plain bisection on w e^w = x; independent of the
/// library's Halley implementation.
inline double lambert_w_bisect(double x) {
    double lo = 0.0, hi = 1.0;
    while (hi * std::exp(hi) < x) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid * std::exp(mid) < x) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace chroma::test
