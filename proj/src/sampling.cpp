#include "chainent/sampling.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "chainent/error.hpp"
#include "chainent/parallel.hpp"
#include "chainent/random.hpp"

namespace chainent {

namespace {

struct TimeWindow {
    double t_start;
    int t_count;
    double dt;
};

void check_window(const ChainConfig& cfg, const TimeWindow& w, bool allow_early,
                  std::vector<std::string>& warnings)
{
    if (!(w.dt > 0.0)) throw InvalidConfig("time step must be positive");
    if (w.t_count < 2) throw InsufficientSamples("a time series needs at least 2 points");
    if (w.t_start < 0.0) throw InvalidConfig("t_start must be non-negative");
    const RevivalTime rt = revival_time(cfg);
    const double earliest = 10.0 * rt.value;
    if (w.t_start < earliest) {
        std::ostringstream os;
        os << "window starts at t = " << w.t_start << ", before 10 revival times (" << earliest
           << ")";
        if (!allow_early) throw WindowTooEarly(os.str());
        warnings.push_back(os.str());
    }
}

SampleSet time_series_shell(const ChainConfig& cfg, Probe probe, const TimeWindow& w,
                            bool allow_early)
{
    SampleSet out;
    out.probe = probe;
    out.origin = SampleOrigin::TimeSeries;
    out.cfg_hash = cfg.hash();
    out.seed = cfg.seed;
    out.t_start = w.t_start;
    out.dt = w.dt;
    check_window(cfg, w, allow_early, out.warnings);
    out.values.resize(static_cast<std::size_t>(w.t_count));
    out.times.resize(static_cast<std::size_t>(w.t_count));
    for (int j = 0; j < w.t_count; ++j) out.times[static_cast<std::size_t>(j)] = w.t_start + j * w.dt;
    return out;
}

std::vector<SampleSet> torus_shells(const ChainConfig& cfg, const std::vector<Probe>& probes,
                                    int N_s, std::uint64_t seed)
{
    if (N_s < 2) throw InsufficientSamples("torus sampling needs N_s >= 2");
    if (probes.empty()) throw InvalidConfig("no probes requested");
    std::vector<SampleSet> sets(probes.size());
    for (std::size_t p = 0; p < probes.size(); ++p) {
        auto& s = sets[p];
        s.probe = probes[p];
        s.origin = SampleOrigin::Torus;
        s.cfg_hash = cfg.hash();
        s.seed = seed;
        s.values.resize(static_cast<std::size_t>(N_s));
        s.sample_seeds.resize(static_cast<std::size_t>(N_s));
        for (int i = 0; i < N_s; ++i)
            s.sample_seeds[static_cast<std::size_t>(i)] = derive_seed(seed, static_cast<std::uint64_t>(i));
    }
    return sets;
}

void torus_sample(const TorusModel& model, std::uint64_t seed, std::size_t i,
                  std::vector<SampleSet>& sets)
{
    const auto phi = uniform_phases(seed, i, model.N());
    const SymplecticSpectrum spec = symplectic_spectrum(model.correlation(phi));
    for (auto& s : sets) s.values[i] = probe_value(spec, s.probe);
}

double time_sample(const ChainConfig& cfg, const DispersionTable& table, Probe probe, double t)
{
    const BlockToeplitzCorrelation c(covariance_time(cfg, table, t, cfg.L_A));
    return probe_value(symplectic_spectrum(c), probe);
}

}  // namespace

std::string to_string(SampleOrigin origin)
{
    return origin == SampleOrigin::TimeSeries ? "time-series" : "torus";
}

double SampleSet::mean() const
{
    double s = 0.0;
    for (double v : values) s += v;
    return values.empty() ? 0.0 : s / static_cast<double>(values.size());
}

double SampleSet::variance() const
{
    if (values.size() < 2) throw InsufficientSamples("variance needs at least 2 samples");
    const double mu = mean();
    double s = 0.0;
    for (double v : values) s += (v - mu) * (v - mu);
    return s / static_cast<double>(values.size());
}

double default_time_step(const DispersionTable& table)
{
    double w_max = 0.0;
    for (double w : table.omega_k) w_max = std::max(w_max, w);
    return std::numbers::phi * 2.0 * std::numbers::pi / (2.0 * w_max);
}

SampleSet sample_time_series(const ChainConfig& cfg, Probe probe, double t_start, int t_count,
                             double dt, bool allow_early, int workers)
{
    SampleSet out = time_series_shell(cfg, probe, {t_start, t_count, dt}, allow_early);
    const DispersionTable table = build_dispersion(cfg);
    parallel_for(out.values.size(), workers,
                 [&](std::size_t j) { out.values[j] = time_sample(cfg, table, probe, out.times[j]); });
    return out;
}

SampleSet sample_torus(const ChainConfig& cfg, Probe probe, int N_s, std::uint64_t seed,
                       int workers)
{
    return sample_torus(cfg, std::vector<Probe>{probe}, N_s, seed, workers).front();
}

std::vector<SampleSet> sample_torus(const ChainConfig& cfg, const std::vector<Probe>& probes,
                                    int N_s, std::uint64_t seed, int workers)
{
    auto sets = torus_shells(cfg, probes, N_s, seed);
    const TorusModel model(cfg);
    parallel_for(static_cast<std::size_t>(N_s), workers,
                 [&](std::size_t i) { torus_sample(model, seed, i, sets); });
    return sets;
}

namespace serial {

std::vector<SampleSet> sample_torus(const ChainConfig& cfg, const std::vector<Probe>& probes,
                                    int N_s, std::uint64_t seed)
{
    auto sets = torus_shells(cfg, probes, N_s, seed);
    const TorusModel model(cfg);
    for (std::size_t i = 0; i < static_cast<std::size_t>(N_s); ++i) torus_sample(model, seed, i, sets);
    return sets;
}

SampleSet sample_time_series(const ChainConfig& cfg, Probe probe, double t_start, int t_count,
                             double dt, bool allow_early)
{
    SampleSet out = time_series_shell(cfg, probe, {t_start, t_count, dt}, allow_early);
    const DispersionTable table = build_dispersion(cfg);
    for (std::size_t j = 0; j < out.values.size(); ++j)
        out.values[j] = time_sample(cfg, table, probe, out.times[j]);
    return out;
}

}  // namespace serial

}  // namespace chainent
