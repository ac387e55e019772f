#pragma once

#include <vector>

namespace chroma {

/// Upper regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double gamma_q(double a, double x);

/// Upper-tail p-value of a chi-squared statistic with `df` degrees of freedom.
double chi_squared_pvalue(double statistic, int df);

/// Chi-squared goodness-of-fit p-value for observed counts against uniform
/// expectation (cells with equal probability).
double chi_squared_uniform_pvalue(const std::vector<long long>& observed);

struct WilsonInterval {
    double point;
    double low;
    double high;
};

/// Wilson score interval for a binomial proportion. z defaults to the
/// two-sided 95% normal quantile.
WilsonInterval wilson_interval(long long successes, long long trials,
                               double z = 1.959963984540054);

}  // namespace chroma
