#pragma once

#include <cstdint>

namespace strengthlab {

// splitmix64: tiny portable PRNG (public-domain algorithm by Sebastiano Vigna).
// Used for every randomized check in the library so that a seed fully
// determines the sample sequence on every platform. Do not swap this out for
// std::mt19937 + distributions: the std distributions are not portable.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform-ish value in [0, bound). Plain modulo: the bias is irrelevant for
    // test-sample generation and the result is fully deterministic.
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    // Derives an independent stream; used to give each suite its own stream so
    // suites can be reordered without changing each other's samples.
    SplitMix64 fork() { return SplitMix64(next() ^ 0xd1b54a32d192ed03ULL); }

private:
    std::uint64_t state_;
};

}  // namespace strengthlab
