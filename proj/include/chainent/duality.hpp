#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chainent/config.hpp"

namespace chainent {

enum class FormKind { Bosonic, Fermionic };

/// Quadratic Hamiltonian matrix in the interleaved (x_r, p_r) or
/// (f_1r, f_2r) ordering. Construction validates symmetry (bosonic, plus
/// positive definiteness) or antisymmetry (fermionic) to 1e-12.
class QuadraticForm {
public:
    QuadraticForm(FormKind kind, Eigen::MatrixXd matrix);

    FormKind kind() const { return kind_; }
    const Eigen::MatrixXd& matrix() const { return matrix_; }
    int modes() const { return static_cast<int>(matrix_.rows() / 2); }

private:
    FormKind kind_;
    Eigen::MatrixXd matrix_;
};

/// Omega_b of the chain in post-quench rescaled units; `pre_quench` selects
/// (omega0, K0), whose normal-mode frequencies are omega0 * s_bar_k.
QuadraticForm chain_hamiltonian(const ChainConfig& cfg, bool pre_quench = false);

struct OrthogonalCanonicalForm {
    Eigen::VectorXd d;  // ascending, positive
    Eigen::MatrixXd G;  // G^T Omega_f G = D (x) [[0,1],[-1,0]]
};

/// Canonical form of a nonsingular antisymmetric matrix, built pair by pair
/// from the eigenspaces of -Omega^2.
OrthogonalCanonicalForm orthogonal_canonical_form(const Eigen::MatrixXd& antisym);

struct WilliamsonResult {
    Eigen::VectorXd D;    // ascending
    Eigen::MatrixXd G_S;  // G_S^T Omega_b G_S = D (x) I_2, G_S J G_S^T = J
};

/// Omega_b^{1/2} through a symmetric eigendecomposition.
Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& spd);

Eigen::MatrixXd dual_fermion_form(const QuadraticForm& omega_b);

/// G_S = Omega_b^{-1/2} G_O (D^{1/2} (x) I_2) with G_O from the dual
/// fermionic form. Throws NotPositiveDefinite for a bosonic form that is not.
WilliamsonResult williamson_decompose(const QuadraticForm& omega_b);

/// Ground-state covariance (1/2) G_S G_S^T of Omega_b.
Eigen::MatrixXd ground_state_covariance(const QuadraticForm& omega_b);

/// gamma(t) = e^{J Omega t} gamma e^{(J Omega t)^T}.
Eigen::MatrixXd evolve_boson_covariance(const QuadraticForm& omega_b, const Eigen::MatrixXd& gamma,
                                        double t);

/// Majorana covariance (i/2)<[f, f]> of the fermionic vacuum: -J/2.
Eigen::MatrixXd fermion_vacuum_covariance(int modes);

/// gamma_f(t) = e^{Omega_f t} gamma_f(0) e^{Omega_f^T t}.
Eigen::MatrixXd evolve_fermion_covariance(const Eigen::MatrixXd& omega_f,
                                          const Eigen::MatrixXd& gamma_f0, double t);

/// -1/4 Tr h(C_f) with C_f = i gamma_f restricted to the first L_A modes.
/// Throws SpectrumOutOfBand if an eigenvalue leaves [-1/2 - 1e-8, 1/2 + 1e-8],
/// InvalidConfig if gamma_f0 is not an admissible fermionic covariance.
double fermion_entropy_path(const Eigen::MatrixXd& omega_f, const Eigen::MatrixXd& gamma_f0,
                            double t, int L_A);

/// Exact diagonalisation on the 2^L Fock space: evolve the vacuum under
/// H = (i/2) f^T Omega_f f and return the von Neumann entropy of the first
/// L_A sites. Intended for L <= 10.
double fermion_entropy_fock(const Eigen::MatrixXd& omega_f, double t, int L_A);

struct DualityCheck {
    std::string name;
    double error = 0.0;
    double tolerance = 0.0;
    bool pass() const { return error <= tolerance; }
};

struct DualityReport {
    std::vector<DualityCheck> checks;
    bool all_pass() const;
};

/// Structural invariants for the chain at cfg.L plus the small-instance
/// entropy oracles at L = fock_L.
DualityReport duality_report(const ChainConfig& cfg, int fock_L = 8);

}  // namespace chainent
