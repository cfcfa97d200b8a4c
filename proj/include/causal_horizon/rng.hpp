#pragma once

#include <cstdint>
#include <random>

namespace ch {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

enum class Lane : std::uint64_t { noise = 0, probes = 1, init = 2, data = 3 };

// Per-trajectory stream seed: splitmix64(splitmix64(seed ^ splitmix64(index)) + lane).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, Lane lane) {
    return splitmix64(splitmix64(seed ^ splitmix64(index)) + static_cast<std::uint64_t>(lane));
}

using Rng = std::mt19937_64;

inline Rng make_stream(std::uint64_t seed, std::uint64_t index, Lane lane) {
    return Rng(derive_seed(seed, index, lane));
}

// Independent noise and probe streams for one trajectory.
struct StreamPair {
    Rng noise;
    Rng probes;
    StreamPair(std::uint64_t seed, std::uint64_t index)
        : noise(make_stream(seed, index, Lane::noise)),
          probes(make_stream(seed, index, Lane::probes)) {}
};

inline double rademacher(Rng& rng) { return (rng() >> 63) ? 1.0 : -1.0; }

}  // namespace ch
