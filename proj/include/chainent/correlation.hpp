#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "chainent/config.hpp"
#include "chainent/dispersion.hpp"

namespace chainent {

/// Lattice coefficients of the subsystem covariance, l = 0..L_A-1.
///
/// The 2x2 covariance block for sites r, r' with l = |r - r'| is
///   [[x0 + x, m], [m, p0 + p]]
/// in the interleaved (x_r, p_r) ordering. The static parts x0, p0 are the
/// time average; x, m, p carry the dependence on time or phase.
struct BlockCoefficients {
    std::vector<double> x_bar0, p_bar0;
    std::vector<double> x_bar, m_bar, p_bar;

    int size() const { return static_cast<int>(x_bar0.size()); }
};

/// Block-Toeplitz correlation matrix C = i J_A gamma_A, stored by its
/// lattice coefficients.
class BlockToeplitzCorrelation {
public:
    BlockToeplitzCorrelation() = default;
    explicit BlockToeplitzCorrelation(BlockCoefficients coeffs);

    int L_A() const { return coeffs_.size(); }
    const BlockCoefficients& coeffs() const { return coeffs_; }

    /// Covariance block gamma_{r r'} for l = r - r' (any sign).
    Eigen::Matrix2d gamma_block(int l) const;
    /// Correlation block tau_l = i J gamma_block(l).
    Eigen::Matrix2cd block(int l) const;

    /// Real symmetric 2L_A x 2L_A covariance gamma_A.
    Eigen::MatrixXd covariance() const;
    /// Complex 2L_A x 2L_A matrix C.
    Eigen::MatrixXcd materialize() const;

private:
    BlockCoefficients coeffs_;
};

/// Direct-sum symplectic form J = diag([[0, 1], [-1, 0]], ...) on `modes` modes.
Eigen::MatrixXd symplectic_form(int modes);

/// Time-domain coefficients at time t, summed literally over all L momenta
/// with phases 2 omega_k t. Independent of the reduced-grid machinery below.
BlockCoefficients covariance_time(const ChainConfig& cfg, const DispersionTable& table, double t,
                                  int L_A);

/// Torus point reached at time t: phi_m = 2 omega_{k_m} t mod 2 pi.
std::vector<double> phases_at_time(const DispersionTable& table, double t);

/// Reduced-grid model of C(phi) for one chain and subsystem size. Holds the
/// static coefficients so repeated evaluations only pay for the dynamic sums.
class TorusModel {
public:
    /// Uses cfg.L_A.
    explicit TorusModel(const ChainConfig& cfg);
    /// Allows any 1 <= L_A <= L, including the full system.
    TorusModel(const ChainConfig& cfg, int L_A);

    const ChainConfig& config() const { return cfg_; }
    const DispersionTable& table() const { return table_; }
    int L() const { return table_.L; }
    int N() const { return table_.N; }
    int L_A() const { return L_A_; }

    /// Throws LengthMismatch unless phi has N entries.
    BlockCoefficients coefficients(std::span<const double> phi) const;
    BlockToeplitzCorrelation correlation(std::span<const double> phi) const;
    /// The phase-independent part C_0 alone.
    BlockToeplitzCorrelation static_correlation() const;

    /// (2 delta_bar_m / L) cos(k_m l) for l = 0..L_A-1: the lattice profile of
    /// mode m. Its contributions are
    ///   x += E_-/s cos(phi_m) w,  m -= E_- sin(phi_m) w,  p -= E_- s cos(phi_m) w.
    std::vector<double> mode_profile(int m) const;

    /// Cached cosine table for direct sums (empty above the FFT threshold).
    std::span<const double> cos_table() const { return cos_table_; }

private:
    ChainConfig cfg_;
    DispersionTable table_;
    int L_A_ = 0;
    std::vector<double> x0_, p0_;
    std::vector<double> cos_table_;
};

/// C(phi) built from a fresh model; convenience for one-off evaluations.
BlockToeplitzCorrelation correlation_phase(const ChainConfig& cfg, std::span<const double> phi,
                                           int L_A);

}  // namespace chainent
