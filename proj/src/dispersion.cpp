#include "chainent/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace chainent {

ModeEnergies mode_energies(const ChainConfig& cfg, double k)
{
    const double sin_half = std::sin(0.5 * k);
    const double sin2 = sin_half * sin_half;
    ModeEnergies e;
    e.s = std::sqrt(1.0 + 4.0 * cfg.K / cfg.omega_sq * sin2);
    e.s_bar = std::sqrt(1.0 + 4.0 * cfg.K0 / cfg.omega0_sq * sin2);
    // Ratio of post- to pre-quench physical mode frequencies.
    const double rho = std::sqrt(cfg.omega_sq) * e.s / (std::sqrt(cfg.omega0_sq) * e.s_bar);
    e.E_plus = 0.25 * (rho + 1.0 / rho);
    e.E_minus = rho == 1.0 ? 0.0 : 0.25 * (rho - 1.0 / rho);
    return e;
}

DispersionTable build_dispersion(const ChainConfig& cfg)
{
    cfg.validate();
    DispersionTable t;
    t.L = cfg.L;
    t.N = cfg.L / 2 + 1;
    t.omega = std::sqrt(cfg.omega_sq);
    t.omega0 = std::sqrt(cfg.omega0_sq);
    const auto n = static_cast<std::size_t>(t.N);
    t.k.resize(n);
    t.s.resize(n);
    t.s_bar.resize(n);
    t.omega_k.resize(n);
    t.E_plus.resize(n);
    t.E_minus.resize(n);
    t.delta_bar.assign(n, 1.0);
    for (std::size_t m = 0; m < n; ++m) {
        t.k[m] = 2.0 * std::numbers::pi * static_cast<double>(m) / cfg.L;
        const ModeEnergies e = mode_energies(cfg, t.k[m]);
        t.s[m] = e.s;
        t.s_bar[m] = e.s_bar;
        t.omega_k[m] = t.omega * e.s;
        t.E_plus[m] = e.E_plus;
        t.E_minus[m] = e.E_minus;
    }
    t.delta_bar.front() = 0.5;
    t.delta_bar.back() = 0.5;
    return t;
}

RevivalTime revival_time(const ChainConfig& cfg)
{
    const DispersionTable t = build_dispersion(cfg);
    const double dk = 2.0 * std::numbers::pi / cfg.L;
    double v_max = 0.0;
    for (int m = 0; m + 1 < t.N; ++m)
        v_max = std::max(v_max, std::abs(t.omega_k[m + 1] - t.omega_k[m]) / dk);
    if (v_max < 1e-12) return {0.0, true};
    return {cfg.L / (2.0 * v_max), false};
}

}  // namespace chainent
