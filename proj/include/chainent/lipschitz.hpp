#pragma once

#include <cstdint>
#include <vector>

#include "chainent/config.hpp"
#include "chainent/probe.hpp"

namespace chainent {

struct LipschitzResult {
    Probe probe;
    int samples = 0;
    double variance = 0.0;      // population variance of O
    double mean_grad_sq = 0.0;  // < |d_phi O|^2 >
    double ratio = 0.0;         // variance / mean_grad_sq
    bool defined = false;       // false when the gradient vanishes
};

/// Variance and mean squared phase gradient on the same N_s torus points.
std::vector<LipschitzResult> lipschitz_variance_check(const ChainConfig& cfg,
                                                      const std::vector<Probe>& probes, int N_s,
                                                      std::uint64_t seed, int workers = 0);

/// Mean squared gradient alone over N_s torus points (scaling sweeps).
double mean_gradient_norm_sq(const ChainConfig& cfg, Probe probe, int N_s, std::uint64_t seed,
                             int workers = 0);

}  // namespace chainent
