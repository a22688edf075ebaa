#pragma once

// Counter-based random streams: trial t of a run seeded with s always sees
// the same numbers, whichever worker executes it.

#include <cmath>
#include <cstdint>

namespace wpcn {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial) : state_(mix64(seed ^ mix64(trial))) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1].
    double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    /// Exp(1) by inversion.
    double exponential() { return -std::log(uniform()); }

private:
    std::uint64_t state_;
};

}  // namespace wpcn
