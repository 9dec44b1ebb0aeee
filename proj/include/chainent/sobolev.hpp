#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "chainent/config.hpp"
#include "chainent/probe.hpp"

namespace chainent {

/// Torus samples with their coordinate-wise extrema.
struct ExtremalTable {
    Probe probe;
    std::vector<double> O;    // O(phi_i)
    Eigen::MatrixXd O_plus;   // N_s x N, inf over phi_m
    Eigen::MatrixXd O_minus;  // N_s x N, sup over phi_m
};

/// Samples are drawn exactly as in sample_torus with the same seed.
ExtremalTable extremal_table(const ChainConfig& cfg, Probe probe, int N_s, std::uint64_t seed,
                             int workers = 0);

struct SobolevDiagnostics {
    std::vector<double> u;     // admissible grid, ascending, 0 excluded
    std::vector<double> G;     // ln < e^{u (O - <O>)} >
    std::vector<double> dG;    // dG/du, exact weighted mean
    std::vector<double> lhs;   // d/du (G/u), central differences on the grid
    std::vector<double> H;
    std::vector<double> delta_F;  // H - b_pm/2, sign of u selects b_pm
    std::vector<double> ratio;    // delta_F / dG
    std::vector<double> ess_fraction;  // effective sample size / N_s
    double b_plus = 0.0;
    double b_minus = 0.0;
    double c_plus = 0.0;   // sup of ratio over u > 0
    double c_minus = 0.0;  // inf of ratio over u < 0
    double c_minus_sup = 0.0;  // sup of ratio over u < 0, reported for comparison
    double variance = 0.0;
    std::size_t dropped = 0;  // grid points removed by the sample-support cut
};

inline constexpr double kMinEffectiveFraction = 0.05;

/// Log-spaced |u| in [u_min, u_max], `per_side` points on each side of 0.
std::vector<double> symmetric_log_grid(double u_min, double u_max, int per_side);

/// Grid scaled to the sample spread: |u| sigma from 1e-2 to 10.
std::vector<double> default_u_grid(std::span<const double> values, int per_side = 60);

SobolevDiagnostics sobolev_from_table(const ExtremalTable& table, std::span<const double> u_grid);

SobolevDiagnostics sobolev_diagnostics(const ChainConfig& cfg, Probe probe, int N_s,
                                       std::span<const double> u_grid, std::uint64_t seed,
                                       int workers = 0);

}  // namespace chainent
