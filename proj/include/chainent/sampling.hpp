#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainent/config.hpp"
#include "chainent/correlation.hpp"
#include "chainent/probe.hpp"

namespace chainent {

enum class SampleOrigin { TimeSeries, Torus };

std::string to_string(SampleOrigin origin);

struct SampleSet {
    Probe probe;
    SampleOrigin origin = SampleOrigin::Torus;
    std::vector<double> values;
    /// Sample time (time series) or per-sample derived seed (torus).
    std::vector<double> times;
    std::vector<std::uint64_t> sample_seeds;
    std::string cfg_hash;
    std::uint64_t seed = 0;
    double t_start = 0.0;
    double dt = 0.0;
    std::vector<std::string> warnings;

    std::size_t count() const { return values.size(); }
    double mean() const;
    /// Population variance.
    double variance() const;
};

/// Default stride: golden ratio times 2 pi / (2 omega_max), the shortest
/// period present in the phases 2 omega_k t.
double default_time_step(const DispersionTable& table);

/// Probe values at t_j = t_start + j dt through the time-domain sums.
/// Requires t_start >= 10 revival times unless `allow_early`, in which case
/// the set carries a warning instead of raising WindowTooEarly.
SampleSet sample_time_series(const ChainConfig& cfg, Probe probe, double t_start, int t_count,
                             double dt, bool allow_early = false, int workers = 0);

/// N_s uniform torus points, sample i drawn from derive_seed(seed, i).
SampleSet sample_torus(const ChainConfig& cfg, Probe probe, int N_s, std::uint64_t seed,
                       int workers = 0);

/// Several probes on the same torus points; one spectrum per point.
std::vector<SampleSet> sample_torus(const ChainConfig& cfg, const std::vector<Probe>& probes,
                                    int N_s, std::uint64_t seed, int workers = 0);

namespace serial {

/// Single-threaded reference for the sampling kernels above.
std::vector<SampleSet> sample_torus(const ChainConfig& cfg, const std::vector<Probe>& probes,
                                    int N_s, std::uint64_t seed);
SampleSet sample_time_series(const ChainConfig& cfg, Probe probe, double t_start, int t_count,
                             double dt, bool allow_early = false);

}  // namespace serial

}  // namespace chainent
