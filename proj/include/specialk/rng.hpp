#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace specialk {

/// Deterministic random stream built on std::mt19937_64.
///
/// The raw generator is fully specified by the standard, and the mappings to
/// doubles are fixed here instead of using the (implementation-defined)
/// stdlib distributions, so a stream is reproducible bit-for-bit on any
/// platform and replicable from other languages:
///   uniform():  (x >> 11) * 2^-53            in [0, 1)
///   normal():   Box-Muller on (0,1] uniforms, pairs drawn as (u1, u2),
///               z0 = sqrt(-2 ln u1) cos(2 pi u2) returned first,
///               z1 = sqrt(-2 ln u1) sin(2 pi u2) cached for the next call.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe as a log() argument.
    double uniform_open() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    /// Unbiased uniform integer in [0, bound); bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// SplitMix64 finalizer; decorrelates nearby integer seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive an independent sub-stream seed from (base, stream index).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    return mix64(base ^ mix64(stream));
}

}  // namespace specialk
