#include "chainent/random.hpp"

#include <numbers>

namespace chainent {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    return mix64(mix64(seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> uniform_phases(std::uint64_t seed, std::uint64_t index, int N)
{
    std::mt19937_64 rng(derive_seed(seed, index));
    std::vector<double> phi(static_cast<std::size_t>(N));
    for (double& p : phi) p = 2.0 * std::numbers::pi * uniform01(rng);
    return phi;
}

}  // namespace chainent
