#pragma once

#include <cstdint>

#include "bob/types.hpp"

namespace bob {

/// SplitMix64. Used wherever reproducibility across platforms matters;
/// std::mt19937 distributions are not bit-stable between standard libraries.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    Scalar uniform01() { return static_cast<Scalar>(next() >> 11) * 0x1.0p-53; }

    Scalar uniform(Scalar lo, Scalar hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::uint64_t state_;
};

} // namespace bob
