#pragma once

#include <vector>

#include <Eigen/Dense>

#include "chainent/correlation.hpp"

namespace chainent {

inline constexpr double kClampTolerance = 1e-10;
inline constexpr double kPairGapTolerance = 1e-6;

/// Positive eigenvalue branch of C, ascending, each >= 1/2.
struct SymplecticSpectrum {
    std::vector<double> lambda;
};

/// Symplectic eigenvalues of a physical covariance matrix. Values within
/// kClampTolerance below 1/2 are clamped to 1/2; anything lower raises
/// SpectrumInGap.
SymplecticSpectrum symplectic_spectrum(const BlockToeplitzCorrelation& corr);
SymplecticSpectrum symplectic_spectrum(const Eigen::MatrixXd& gamma);

/// Symplectic eigenvalues of any symmetric positive-definite matrix in the
/// interleaved ordering, ascending, without clamping.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& spd);

/// Same values from the full eigendecomposition of B^T B with the pair-gap
/// check. Slower; kept as a cross-check for the reduced route above.
std::vector<double> symplectic_eigenvalues_reference(const Eigen::MatrixXd& spd);

/// Factorisation shared by the spectrum and gradient paths:
/// gamma = R^T R, B = R J R^T and B^T B = V diag(mu) V^T with mu ascending.
struct SymplecticFactor {
    Eigen::MatrixXd R;
    Eigen::VectorXd mu;
    Eigen::MatrixXd V;  // empty unless requested
};

SymplecticFactor symplectic_factor(const Eigen::MatrixXd& gamma, bool with_vectors);

/// Pairs the doubly degenerate mu, checks the pair gap and returns sqrt of
/// the pair means.
std::vector<double> pair_roots(const Eigen::VectorXd& mu);

}  // namespace chainent
