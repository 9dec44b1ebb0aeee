#pragma once

#include <span>
#include <vector>

namespace chainent {

struct TailCurve {
    std::vector<double> epsilon;
    std::vector<double> p_plus;   // fraction with O - <O> >= eps
    std::vector<double> p_minus;  // fraction with O - <O> <= -eps
    double mean = 0.0;
    std::size_t count = 0;
};

inline constexpr std::size_t kMinTailSamples = 1000;
inline constexpr double kTailFitLow = 1e-3;
inline constexpr double kTailFitHigh = 0.3;

/// Empirical deviation probabilities about the sample mean. Raises
/// InsufficientSamples below kMinTailSamples values.
TailCurve tail_probabilities(std::span<const double> values, std::span<const double> eps_grid);

/// `points` values evenly spaced on [0, max |O - <O>|].
std::vector<double> default_eps_grid(std::span<const double> values, int points = 200);

struct ConcentrationFit {
    double b_plus_hat = 0.0;         // upper: -ln P+ = eps^2 / (2 b+)
    double b_minus_hat = 0.0;        // lower: -ln P- = eps^2 / (2 (b- + c eps))
    double c_hat = 0.0;
    double b_minus_gauss_hat = 0.0;  // lower tail refit with c = 0
    double residual_plus = 0.0;      // RMS residual in -ln P
    double residual_minus_gamma = 0.0;
    double residual_minus_gauss = 0.0;
    int points_plus = 0;
    int points_minus = 0;

    /// Sub-Gamma residual strictly below the sub-Gaussian one.
    bool gamma_beats_gauss() const { return residual_minus_gamma < residual_minus_gauss; }
};

/// Least-squares fits over the points with P in [1e-3, 0.3]. Raises
/// DegenerateFit when a tail has fewer than two such points.
ConcentrationFit fit_concentration(const TailCurve& tails);

struct TailComparison {
    double epsilon = 0.0;
    double p_plus = 0.0;
    double p_minus = 0.0;
};

/// Largest grid eps at which the lighter tail still holds at least
/// `min_count` samples.
TailComparison deepest_resolvable(const TailCurve& tails, std::size_t min_count = 100);

}  // namespace chainent
