#pragma once

#include <cstdint>

namespace fhp {

// SplitMix64 finalizer, used as the mixing round of a keyed counter hash.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based keyed generator. The output depends only on
// (seed, stream, a, b, c), never on call order, so row-partitioned
// workers see exactly the same draws as a sequential run.
class CounterRng {
public:
    // Stream tags keep independent uses of the same seed decorrelated.
    enum Stream : std::uint64_t {
        kChirality = 0x1db3u,
        kInitFill  = 0x9c65u,
        kMask      = 0x52a7u,
    };

    CounterRng(std::uint64_t seed, Stream stream)
        : key_(mix64(seed ^ (static_cast<std::uint64_t>(stream) * 0xff51afd7ed558ccdULL))) {}

    std::uint64_t word(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
        std::uint64_t h = key_;
        h = mix64(h ^ a);
        h = mix64(h ^ b);
        h = mix64(h ^ c);
        return h;
    }

    bool coin(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
        return (word(a, b, c) >> 63) != 0;
    }

    // Uniform double in [0,1) with 53 random bits.
    double uniform(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
        return static_cast<double>(word(a, b, c) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t key_;
};

} // namespace fhp
