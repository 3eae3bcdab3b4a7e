#pragma once

#include <cstdint>
#include <random>

#include "homolpn/gf2.hpp"

namespace homolpn {

/// SplitMix64 finalizer; used to derive independent child seeds.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seedable, splittable generator. Every stochastic operation in the library
/// takes one of these explicitly; nothing reads global random state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    BitVec bits(std::size_t len) {
        BitVec v(len);
        std::uint64_t word = 0;
        for (std::size_t i = 0; i < len; ++i) {
            if (i % 64 == 0) word = next();
            if ((word >> (i % 64)) & 1U) v.set(i);
        }
        return v;
    }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        // Rejection sampling; std distributions are implementation-defined.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % bound;
    }

    /// Child generator whose stream is independent of this one's future draws.
    Rng split() { return Rng(next() ^ 0x5851f42d4c957f2dULL); }

private:
    std::mt19937_64 engine_;
};

}  // namespace homolpn
