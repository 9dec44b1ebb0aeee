#pragma once

#include <vector>

#include "chainent/config.hpp"

namespace chainent {

/// Per-mode quantities on the reduced momentum grid k_m = 2 pi m / L,
/// m = 0..N-1 with N = L/2 + 1 (the distinct frequencies of an even
/// dispersion).
struct DispersionTable {
    int L = 0;
    int N = 0;
    double omega = 0.0;   // post-quench sqrt(omega_sq)
    double omega0 = 0.0;  // pre-quench sqrt(omega0_sq)
    std::vector<double> k;
    std::vector<double> s;          // post-quench s_k
    std::vector<double> s_bar;      // pre-quench s_k
    std::vector<double> omega_k;    // omega * s_k
    std::vector<double> E_plus;
    std::vector<double> E_minus;
    std::vector<double> delta_bar;  // 1/2 at m = 0 and m = L/2, else 1
};

struct ModeEnergies {
    double s = 1.0;
    double s_bar = 1.0;
    double E_plus = 0.5;
    double E_minus = 0.0;
};

/// s_k, s_bar_k and E_{+-}(k) at an arbitrary momentum k.
ModeEnergies mode_energies(const ChainConfig& cfg, double k);

DispersionTable build_dispersion(const ChainConfig& cfg);

struct RevivalTime {
    double value = 0.0;
    /// Set when the band is flat (no propagation); any t > 0 is then "long".
    bool flat_band = false;
};

/// L / (2 v_max) with v_max the largest finite-difference group velocity on
/// the k grid. Only used to place long-time sampling windows.
RevivalTime revival_time(const ChainConfig& cfg);

}  // namespace chainent
