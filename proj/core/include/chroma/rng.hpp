#pragma once

#include <cstdint>
#include <vector>

#include "chroma/errors.hpp"

namespace chroma {

/// Splittable 64-bit generator (splitmix64 core).
///
/// Stream semantics: a generator is fully determined by the seed it was
/// constructed with. `derive(i)` returns an independent stream that is a
/// function of (original seed, i) only, regardless of how many values have
/// been drawn so far. This is what makes batched Monte-Carlo work
/// reproducible under any degree of parallelism: worker j for trial i always
/// uses derive(i).
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : seed0_(seed), state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~std::uint64_t{0}; }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    result_type operator()() { return next(); }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    /// Unbiased uniform draw from [0, n). Rejection sampling, so identical
    /// across platforms (std::uniform_int_distribution is not).
    std::uint64_t bounded(std::uint64_t n) {
        if (n == 0) throw DomainError("SplitMix64::bounded: n must be positive");
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    int pick_index(int n) { return static_cast<int>(bounded(static_cast<std::uint64_t>(n))); }

    template <class T>
    const T& pick(const std::vector<T>& xs) {
        if (xs.empty()) throw DomainError("SplitMix64::pick: empty vector");
        return xs[pick_index(static_cast<int>(xs.size()))];
    }

    /// Independent stream derived from the original seed and `stream`.
    SplitMix64 derive(std::uint64_t stream) const {
        SplitMix64 mixer(seed0_ ^ (0x632be59bd9b4e019ULL * (stream + 1)));
        std::uint64_t s = mixer.next();
        return SplitMix64(s);
    }

    std::uint64_t seed() const { return seed0_; }

  private:
    std::uint64_t seed0_;
    std::uint64_t state_;
};

}  // namespace chroma
