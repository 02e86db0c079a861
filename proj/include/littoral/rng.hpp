#pragma once

#include <cstdint>
#include <random>

namespace littoral {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; decorrelates sequential seeds before they reach mt19937_64.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent stream for run `idx` of an experiment seeded with `base`.
inline Rng make_rng(std::uint64_t base, std::uint64_t idx = 0) {
    return Rng(mix_seed(base + 0x51700a11ULL * (idx + 1)));
}

}  // namespace littoral
