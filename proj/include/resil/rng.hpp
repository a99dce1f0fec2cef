#pragma once

#include <cstdint>
#include <random>

#include "resil/core.hpp"

namespace resil {

/// Seedable random source with output fixed by the C++ standard:
/// std::mt19937_64 seeded with the raw 64-bit seed. The derived draws below
/// use only integer arithmetic on engine output (std distributions are
/// implementation-defined and would break cross-platform traces).
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, n). Rejection sampling, so unbiased. n > 0.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) throw Error(ErrorKind::InvalidArgument, "uniform_below(0)");
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        uniform_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace resil
