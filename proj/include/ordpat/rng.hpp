#pragma once

#include <cstdint>
#include <random>

namespace ordpat {

// SplitMix64 finalizer, used only to derive engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for substream `index` of a run keyed by `master`. Monte Carlo loops
// give each trajectory its own substream, so results do not depend on how
// the trajectories are distributed over threads.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x9e3779b97f4a7c15ULL));
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t index = 0) {
    return std::mt19937_64(substream_seed(master, index));
}

} // namespace ordpat
