#include "chroma/stats.hpp"

#include <cmath>

#include "chroma/errors.hpp"

namespace chroma {

namespace {

// Series expansion of the lower regularized gamma P(a, x); converges for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) (modified Lentz); converges for x >= a+1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw DomainError("gamma_q: a > 0 and x >= 0 required");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_squared_pvalue(double statistic, int df) {
    if (df <= 0) throw DomainError("chi_squared_pvalue: df must be positive");
    if (statistic < 0.0) throw DomainError("chi_squared_pvalue: negative statistic");
    return gamma_q(0.5 * df, 0.5 * statistic);
}

double chi_squared_uniform_pvalue(const std::vector<long long>& observed) {
    if (observed.size() < 2) throw DomainError("chi_squared_uniform_pvalue: need >= 2 cells");
    long long total = 0;
    for (long long c : observed) total += c;
    if (total <= 0) throw DomainError("chi_squared_uniform_pvalue: no observations");
    const double expected = static_cast<double>(total) / static_cast<double>(observed.size());
    double stat = 0.0;
    for (long long c : observed) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return chi_squared_pvalue(stat, static_cast<int>(observed.size()) - 1);
}

WilsonInterval wilson_interval(long long successes, long long trials, double z) {
    if (trials <= 0) throw DomainError("wilson_interval: trials must be positive");
    if (successes < 0 || successes > trials)
        throw DomainError("wilson_interval: successes out of range");
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return WilsonInterval{phat, centre - half, centre + half};
}

}  // namespace chroma
