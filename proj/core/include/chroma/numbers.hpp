#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "chroma/rng.hpp"

namespace chroma {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Natural log of a non-negative BigInt; -inf for zero. Safe for values far
/// beyond double range.
inline double log_of(const BigInt& x) {
    if (x < 0) throw DomainError("log_of: negative value");
    if (x == 0) return -std::numeric_limits<double>::infinity();
    const std::size_t bits = boost::multiprecision::msb(x);
    if (bits <= 512) return std::log(x.convert_to<double>());
    const BigInt shifted = x >> (bits - 512);
    return std::log(shifted.convert_to<double>()) +
           static_cast<double>(bits - 512) * 0.6931471805599453094;
}

inline double to_double(const BigRat& x) { return x.convert_to<double>(); }

/// Exact rational value of the double `x` (every finite double is rational).
inline BigRat rational_of(double x) {
    if (!std::isfinite(x)) throw DomainError("rational_of: non-finite value");
    return BigRat(x);
}

inline BigRat pow_rat(const BigRat& base, unsigned exponent) {
    BigRat r = 1;
    for (unsigned i = 0; i < exponent; ++i) r *= base;
    return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

/// Uniform BigInt in [0, n). Rejection on the bit width of n.
inline BigInt uniform_below(const BigInt& n, SplitMix64& rng) {
    if (n <= 0) throw DomainError("uniform_below: n must be positive");
    const std::size_t bits = boost::multiprecision::msb(n) + 1;
    const std::size_t words = (bits + 63) / 64;
    const std::size_t top_bits = bits - (words - 1) * 64;
    const std::uint64_t top_mask =
        top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
    for (;;) {
        BigInt r = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t word = rng.next();
            if (w + 1 == words) word &= top_mask;
            r |= BigInt(word) << (64 * w);
        }
        if (r < n) return r;
    }
}

}  // namespace chroma
