#pragma once

#include <cstdint>

namespace relprec {

/// Deterministic 64-bit generator (splitmix64). Seeded streams reproduce
/// identically across platforms, which keeps randomized sweeps replayable.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, n).
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    /// Uniform value in [lo, hi] (inclusive).
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next() & 1) != 0; }

private:
    std::uint64_t state_;
};

}  // namespace relprec
