#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chainent/config.hpp"
#include "chainent/probe.hpp"

namespace chainent {

struct ScalingOptions {
    int samples = 1000;                 // torus samples per sampling-route point
    int gradient_samples = 16;          // samples per gradient-route point
    int gradient_route_above = 100000;  // L beyond which the gradient route is used
    double lipschitz_C = 0.5;           // Var = C <|d O|^2> on the gradient route
    bool with_quadrature = false;       // attach analytic a, b for the template cfg
    int workers = 0;
};

struct ScalingPoint {
    int L = 0;
    int L_A = 0;
    Probe probe;
    double variance = 0.0;
    double std_error = 0.0;
    bool gradient_route = false;
    int samples = 0;
};

struct ScalingFit {
    Probe probe;
    double slope_L = 0.0;   // d log Var / d log L at the smallest L_A
    double slope_LA = 0.0;  // d log Var / d log L_A at the largest L
    double a_hat = 0.0;     // Var = a/L + b L_A^3 / L^2, relative least squares
    double b_hat = 0.0;
    double collapse_residual = 0.0;  // max |Var / model - 1|
};

struct QuadratureOptions {
    int L_ref = 4096;          // chain used to materialise C_0
    int points = 1024;         // quadrature nodes per k axis
    double lipschitz_C = 0.5;
    std::optional<int> L_e;    // overrides the measured decay length
    double decay_threshold = 1e-6;
};

struct ScalingCoefficients {
    double a = 0.0;
    double b = 0.0;
    int L_e = 0;
    Eigen::Matrix2d zeta = Eigen::Matrix2d::Zero();   // ln((C0 + 1/2)/(C0 - 1/2))_rr = i zeta
    Eigen::Matrix2d kappa = Eigen::Matrix2d::Zero();  // (C0^2 - 1/4)^{-1}_rr
};

struct ScalingResult {
    std::vector<ScalingPoint> points;
    std::vector<ScalingFit> fits;
    std::optional<ScalingCoefficients> quadrature;  // entropy probe only
    std::vector<std::string> warnings;
};

/// Points (L, min L_A) for every L and (max L, L_A) for every L_A; pairs with
/// L_A > L/2 are skipped with a warning, as are lists covering only one side
/// of the crossover L_A ~ L^{1/3}.
ScalingResult variance_scaling_sweep(const ChainConfig& cfg_template, const std::vector<int>& L_list,
                                     const std::vector<int>& L_A_list,
                                     const std::vector<Probe>& probes, const ScalingOptions& options,
                                     std::uint64_t seed);

/// Variance at one grid point by either route.
ScalingPoint measure_variance(const ChainConfig& cfg, Probe probe, const ScalingOptions& options,
                              std::uint64_t seed);

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Fits a, b of Var = a/L + b L_A^3/L^2 minimising relative residuals.
std::pair<double, double> fit_scaling_law(const std::vector<ScalingPoint>& points);

/// Smallest l whose static block norm is below threshold times the l = 0 norm.
int measure_decay_length(const ChainConfig& cfg, int L_ref, double threshold);

/// a and b from the single and double k integrals of the edge and bulk
/// terms, with zeta and kappa read off the middle site of a materialised C_0.
ScalingCoefficients scaling_coefficients_quadrature(const ChainConfig& cfg,
                                                    const QuadratureOptions& options = {});

}  // namespace chainent
