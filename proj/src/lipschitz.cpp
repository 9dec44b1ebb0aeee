#include "chainent/lipschitz.hpp"

#include "chainent/correlation.hpp"
#include "chainent/error.hpp"
#include "chainent/gradient.hpp"
#include "chainent/parallel.hpp"
#include "chainent/random.hpp"

namespace chainent {

namespace {

constexpr double kVanishingGradient = 1e-300;

}  // namespace

std::vector<LipschitzResult> lipschitz_variance_check(const ChainConfig& cfg,
                                                      const std::vector<Probe>& probes, int N_s,
                                                      std::uint64_t seed, int workers)
{
    if (N_s < 2) throw InsufficientSamples("Lipschitz check needs N_s >= 2");
    const TorusModel model(cfg);
    const auto ns = static_cast<std::size_t>(N_s);
    std::vector<std::vector<double>> values(probes.size(), std::vector<double>(ns));
    std::vector<std::vector<double>> norms(probes.size(), std::vector<double>(ns));
    parallel_for(ns, workers, [&](std::size_t i) {
        const auto phi = uniform_phases(seed, i, model.N());
        for (std::size_t p = 0; p < probes.size(); ++p) {
            const ProbeGradient g = entropy_gradient(model, phi, probes[p]);
            values[p][i] = g.value;
            norms[p][i] = g.norm_sq();
        }
    });

    std::vector<LipschitzResult> out;
    for (std::size_t p = 0; p < probes.size(); ++p) {
        LipschitzResult r;
        r.probe = probes[p];
        r.samples = N_s;
        double mean = 0.0, g2 = 0.0;
        for (std::size_t i = 0; i < ns; ++i) {
            mean += values[p][i];
            g2 += norms[p][i];
        }
        mean /= static_cast<double>(ns);
        for (double v : values[p]) r.variance += (v - mean) * (v - mean);
        r.variance /= static_cast<double>(ns);
        r.mean_grad_sq = g2 / static_cast<double>(ns);
        r.defined = r.mean_grad_sq > kVanishingGradient;
        r.ratio = r.defined ? r.variance / r.mean_grad_sq : 0.0;
        out.push_back(r);
    }
    return out;
}

double mean_gradient_norm_sq(const ChainConfig& cfg, Probe probe, int N_s, std::uint64_t seed,
                             int workers)
{
    if (N_s < 1) throw InsufficientSamples("gradient average needs N_s >= 1");
    const TorusModel model(cfg);
    std::vector<double> norms(static_cast<std::size_t>(N_s));
    parallel_for(norms.size(), workers, [&](std::size_t i) {
        const auto phi = uniform_phases(seed, i, model.N());
        norms[i] = entropy_gradient(model, phi, probe).norm_sq();
    });
    double s = 0.0;
    for (double v : norms) s += v;
    return s / static_cast<double>(N_s);
}

}  // namespace chainent
