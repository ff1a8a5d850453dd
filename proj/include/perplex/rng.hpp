#pragma once

#include <cstdint>

namespace perplex {

/// SplitMix64: tiny deterministic generator. Used for all seeded
/// randomness (scrambles, demo trials) so that identical seeds give
/// identical bytes on every platform; std::uniform_int_distribution
/// makes no such promise.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, n) for n >= 1, by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % n;
    }

    /// Uniform value in [lo, hi] inclusive.
    std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next() & 1) != 0; }

    /// Independent stream for subtask `index` of a master seed.
    static SplitMix64 derived(std::uint64_t master, std::uint64_t index) {
        SplitMix64 g(master ^ (0x632be59bd9b4e019ULL * (index + 1)));
        g.next();
        return g;
    }

private:
    std::uint64_t state_;
};

} // namespace perplex
