#include "chroma/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chroma/errors.hpp"

namespace chroma {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double lambert_w(double x) {
    if (x < 0.0) throw DomainError("lambert_w: negative input");
    if (x == 0.0) return 0.0;
    const double tol = 1e-12 * std::max(1.0, x);
    double w = x < 1.0 ? x : std::log(1.0 + x);
    for (int iter = 0; iter < 100; ++iter) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (std::fabs(f) <= tol) return w;
        // Halley step.
        const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        w -= f / denom;
    }
    // Fallback bisection on [0, max(1, ln x + 1)].
    double lo = 0.0, hi = std::max(1.0, std::log(x) + 1.0);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid * std::exp(mid) < x) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

BoundValue required_list_size(int deg, double d, int max_deg, double ell) {
    if (deg < 0 || max_deg < 0) throw DomainError("required_list_size: negative degree");
    if (ell <= 0.0) throw DomainError("required_list_size: ell must be positive");
    const double rho = max_deg / (d + 1.0);
    if (rho <= 1.0) throw DomainError("required_list_size: rho = Delta/(d+1) must exceed 1");
    const double log_rho = std::log(rho);
    const double factor = 1.0 + 2.0 / log_rho;
    // deg -> 0 limit of deg / W(deg/ell) is ell.
    const double core = deg == 0 ? ell : deg / lambert_w(deg / ell);
    const double value = factor * core;
    BoundValue out{value, std::log(value), {}};
    out.hypotheses.push_back(
        {"ell >= (d+1) (ln rho)^3", ell >= (d + 1.0) * log_rho * log_rho * log_rho});
    out.hypotheses.push_back({"d <= Delta/6 - 1", d <= max_deg / 6.0 - 1.0});
    return out;
}

double coupon_lower_bound(int k, int d, int t, double expected_short) {
    if (t < 1) throw DomainError("coupon_lower_bound: t >= 1 required");
    if (d < 0) throw DomainError("coupon_lower_bound: negative d");
    const double k0 = k - expected_short;
    if (k0 <= 0.0) throw DomainError("coupon_lower_bound: k0 = k - E[X] must be positive");
    return k0 * std::exp(-(1.0 + 1.0 / t) * d / k0);
}

double generalised_coupon_bound(int k, int n_vertices, int t, double expected_short) {
    return coupon_lower_bound(k, n_vertices, t, expected_short);
}

double list_tail_bound(double t, double ell) {
    if (ell <= 0.0) throw DomainError("list_tail_bound: ell must be positive");
    if (t < 0.0) throw DomainError("list_tail_bound: negative t");
    return std::min(1.0, t / ell);
}

double count_bound_q_floor(int deg, double d, int max_deg) {
    if (deg < 0 || max_deg < 0) throw DomainError("count_bound_q_floor: negative degree");
    const double rho = max_deg / (d + 1.0);
    if (rho <= 1.0) throw DomainError("count_bound_q_floor: rho must exceed 1");
    const double log_rho = std::log(rho);
    const double ell = (d + 1.0) * log_rho * log_rho * log_rho;
    const double core = deg == 0 ? ell : deg / lambert_w(deg / ell);
    return (1.0 + 1.0 / log_rho) * core;
}

BoundValue count_lower_bound(const Graph& g, const std::vector<double>& q_values, double d) {
    const int n = g.vertex_count();
    if (n == 0) throw DomainError("count_lower_bound: empty graph");
    if (static_cast<int>(q_values.size()) != n)
        throw DomainError("count_lower_bound: one q value per vertex required");
    const int max_deg = max_degree(g);
    const bool rho_ok = max_deg / (d + 1.0) > 1.0;
    double log_q_mean = 0.0, log_deg_mean = 0.0;
    bool q_floor_ok = rho_ok;
    for (Vertex v = 0; v < n; ++v) {
        if (q_values[v] <= 0.0) throw DomainError("count_lower_bound: q values must be positive");
        const int deg = g.degree(v);
        if (deg == 0)
            throw DomainError("count_lower_bound: geometric mean degree undefined (degree 0)");
        log_q_mean += std::log(q_values[v]);
        log_deg_mean += std::log(static_cast<double>(deg));
        if (rho_ok && q_values[v] < count_bound_q_floor(deg, d, max_deg) * (1.0 - 1e-12))
            q_floor_ok = false;
    }
    log_q_mean /= n;
    log_deg_mean /= n;
    const double log_bound = n * (log_q_mean - 0.5 * (log_deg_mean - std::log(d + 1.0)));
    BoundValue out{std::exp(log_bound), log_bound, {}};
    out.hypotheses.push_back({"d <= Delta/6 - 1", d <= max_deg / 6.0 - 1.0});
    out.hypotheses.push_back({"q(v) >= (1 + 1/ln rho) deg(v)/W(deg(v)/((d+1)(ln rho)^3))",
                              q_floor_ok});
    return out;
}

BoundValue bbck_lower_bound(long long n, long long m, int k, int max_deg) {
    if (n < 0 || m < 0) throw DomainError("bbck_lower_bound: negative n or m");
    if (k < 2) throw DomainError("bbck_lower_bound: k >= 2 required");
    const double delta = 4.0 / k * std::exp(static_cast<double>(max_deg) / k);
    BoundValue out{0.0, 0.0, {}};
    out.hypotheses.push_back({"delta = (4/k) e^{Delta/k} < 1", delta < 1.0});
    if (delta >= 1.0) {
        out.value = 0.0;
        out.log_value = -kInf;
        return out;
    }
    out.log_value = m * std::log(1.0 - 1.0 / k) + n * std::log((1.0 - delta) * k);
    out.value = std::exp(out.log_value);
    return out;
}

double tree_free_energy(int max_deg, int k) {
    if (k < 2) throw DomainError("tree_free_energy: k >= 2 required");
    if (max_deg < 0) throw DomainError("tree_free_energy: negative max degree");
    return std::log(static_cast<double>(k)) + max_deg / 2.0 * std::log(1.0 - 1.0 / k);
}

double chernoff_upper(double mu, double delta) {
    if (mu < 0.0) throw DomainError("chernoff_upper: negative mu");
    if (delta < 0.0) throw DomainError("chernoff_upper: negative delta");
    if (mu == 0.0 || delta == 0.0) return 1.0;
    return std::exp(mu * (delta - (1.0 + delta) * std::log1p(delta)));
}

double chernoff_upper_abs(double mu, double sigma) {
    if (mu < 0.0 || sigma < 0.0) throw DomainError("chernoff_upper_abs: negative input");
    if (sigma < 6.0 * mu)
        throw DomainError("chernoff_upper_abs: requires sigma >= 6 mu");
    return std::exp(-sigma);
}

double lower_tail_bound(double delta, double ell, bool doubled) {
    if (!(delta > 0.0 && delta < 1.0))
        throw DomainError("lower_tail_bound: delta in (0,1) required");
    if (ell <= 0.0) throw DomainError("lower_tail_bound: ell must be positive");
    const double base = std::exp(-delta * delta * ell / 2.0);
    return std::min(1.0, doubled ? 2.0 * base : base);
}

double percolation_bound(int s, int f) {
    if (s < 2) throw DomainError("percolation_bound: s >= 2 required");
    if (f < 1) throw DomainError("percolation_bound: f >= 1 required");
    const int half = (f + 1) / 2;
    return -std::pow(static_cast<double>(s), static_cast<double>(half));
}

bool percolation_hypothesis_check(double p, int max_deg, int s) {
    if (p < 0.0 || p > 1.0) throw DomainError("percolation_hypothesis_check: p outside [0,1]");
    if (max_deg < 2) throw DomainError("percolation_hypothesis_check: Delta >= 2 required");
    return s >= 6.0 * p * max_deg && s >= 3.0 * std::log(static_cast<double>(max_deg));
}

double vu_list_bound(int max_deg, double f) {
    if (max_deg < 0) throw DomainError("vu_list_bound: negative max degree");
    const double rho = std::min(f, static_cast<double>(max_deg)) / 3.0;
    if (rho <= 1.0) throw DomainError("vu_list_bound: min{f, Delta}/3 must exceed 1");
    const double log_rho = std::log(rho);
    return (1.0 + 2.0 / log_rho) * max_deg / lambert_w(rho / (log_rho * log_rho * log_rho));
}

double avoidance_probability_lower(const std::vector<double>& list_sizes,
                                   const std::vector<double>& degrees) {
    if (list_sizes.size() != degrees.size())
        throw DomainError("avoidance_probability_lower: size mismatch");
    double product = 1.0;
    for (std::size_t i = 0; i < list_sizes.size(); ++i) {
        const double gap = list_sizes[i] - degrees[i];
        if (gap < 1.0)
            throw DomainError("avoidance_probability_lower: requires |L(v)| >= deg(v) + 1");
        product *= 1.0 - 1.0 / gap;
    }
    return product;
}

}  // namespace chroma
