#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace chainent {

/// splitmix64 finaliser; decorrelates (seed, index) pairs.
std::uint64_t mix64(std::uint64_t x);

/// Seed of sample `index` in a run seeded with `seed`. Depends on nothing
/// else, so results do not depend on how samples are spread over workers.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng);

/// N independent uniform phases in [0, 2 pi) for sample `index`.
std::vector<double> uniform_phases(std::uint64_t seed, std::uint64_t index, int N);

}  // namespace chainent
