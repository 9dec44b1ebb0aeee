#include "chainent/duality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "chainent/correlation.hpp"
#include "chainent/dispersion.hpp"
#include "chainent/error.hpp"
#include "chainent/probe.hpp"
#include "chainent/spectrum.hpp"

namespace chainent {

namespace {

constexpr double kFormTolerance = 1e-12;
constexpr double kBandTolerance = 1e-8;

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXd canonical_block(const Eigen::VectorXd& d, bool antisym)
{
    const Eigen::Index n = d.size();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (Eigen::Index r = 0; r < n; ++r) {
        if (antisym) {
            out(2 * r, 2 * r + 1) = d(r);
            out(2 * r + 1, 2 * r) = -d(r);
        } else {
            out(2 * r, 2 * r) = d(r);
            out(2 * r + 1, 2 * r + 1) = d(r);
        }
    }
    return out;
}

}  // namespace

QuadraticForm::QuadraticForm(FormKind kind, Eigen::MatrixXd matrix)
    : kind_(kind), matrix_(std::move(matrix))
{
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() % 2 != 0 || matrix_.rows() == 0)
        throw LengthMismatch("quadratic form must be square with even size");
    const double scale = std::max(1.0, max_abs(matrix_));
    if (kind_ == FormKind::Bosonic) {
        if (max_abs(matrix_ - matrix_.transpose()) > kFormTolerance * scale)
            throw InvalidConfig("bosonic form is not symmetric");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() <= 0.0)
            throw NotPositiveDefinite("bosonic form is not positive definite");
    } else if (max_abs(matrix_ + matrix_.transpose()) > kFormTolerance * scale) {
        throw InvalidConfig("fermionic form is not antisymmetric");
    }
}

QuadraticForm chain_hamiltonian(const ChainConfig& cfg, bool pre_quench)
{
    cfg.validate();
    const int L = cfg.L;
    const double w = std::sqrt(cfg.omega_sq);
    const double mass = pre_quench ? cfg.omega0_sq / cfg.omega_sq : 1.0;
    const double k = (pre_quench ? cfg.K0 : cfg.K) / cfg.omega_sq;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * L, 2 * L);
    for (int r = 0; r < L; ++r) {
        const int next = (r + 1) % L;
        m(2 * r, 2 * r) += w * (mass + 2.0 * k);
        m(2 * r, 2 * next) -= w * k;
        m(2 * next, 2 * r) -= w * k;
        m(2 * r + 1, 2 * r + 1) = w;
    }
    return {FormKind::Bosonic, m};
}

OrthogonalCanonicalForm orthogonal_canonical_form(const Eigen::MatrixXd& antisym)
{
    const Eigen::Index n2 = antisym.rows();
    if (n2 != antisym.cols() || n2 % 2 != 0) throw LengthMismatch("canonical form needs even square input");
    const Eigen::MatrixXd sq = -(antisym * antisym);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sq + sq.transpose()));
    if (es.info() != Eigen::Success) throw NumericalDegeneracy("eigensolver failed on -Omega^2");

    OrthogonalCanonicalForm out;
    out.G = Eigen::MatrixXd::Zero(n2, n2);
    out.d = Eigen::VectorXd::Zero(n2 / 2);
    Eigen::Index pairs = 0;
    for (Eigen::Index c = 0; c < n2 && pairs < n2 / 2; ++c) {
        Eigen::VectorXd v = es.eigenvectors().col(c);
        // Two passes of Gram-Schmidt against the pairs already placed.
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index j = 0; j < 2 * pairs; ++j) v -= out.G.col(j).dot(v) * out.G.col(j);
        const double norm = v.norm();
        if (norm < 0.5) continue;
        v /= norm;
        Eigen::VectorXd w = -(antisym * v);
        const double d = w.norm();
        if (d == 0.0) throw NumericalDegeneracy("antisymmetric form is singular");
        w /= d;
        out.G.col(2 * pairs) = v;
        out.G.col(2 * pairs + 1) = w;
        out.d(pairs) = v.dot(antisym * w);
        ++pairs;
    }
    if (pairs != n2 / 2) throw NumericalDegeneracy("could not complete the canonical basis");
    return out;
}

Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& spd)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spd);
    if (es.eigenvalues().minCoeff() <= 0.0) throw NotPositiveDefinite("matrix square root of non-SPD input");
    const Eigen::MatrixXd r =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
    return 0.5 * (r + r.transpose());
}

Eigen::MatrixXd dual_fermion_form(const QuadraticForm& omega_b)
{
    if (omega_b.kind() != FormKind::Bosonic) throw InvalidConfig("dual form needs a bosonic input");
    const Eigen::MatrixXd root = spd_sqrt(omega_b.matrix());
    return root * symplectic_form(omega_b.modes()) * root;
}

WilliamsonResult williamson_decompose(const QuadraticForm& omega_b)
{
    if (omega_b.kind() != FormKind::Bosonic) throw InvalidConfig("Williamson form needs a bosonic input");
    const Eigen::MatrixXd root = spd_sqrt(omega_b.matrix());
    const Eigen::MatrixXd omega_f = root * symplectic_form(omega_b.modes()) * root;
    const OrthogonalCanonicalForm can = orthogonal_canonical_form(omega_f);
    Eigen::VectorXd scale(2 * can.d.size());
    for (Eigen::Index r = 0; r < can.d.size(); ++r) scale(2 * r) = scale(2 * r + 1) = std::sqrt(can.d(r));
    WilliamsonResult out;
    out.D = can.d;
    out.G_S = root.llt().solve(can.G) * scale.asDiagonal();
    // llt().solve gives Omega^{-1/2} G_O since root is SPD.
    return out;
}

Eigen::MatrixXd ground_state_covariance(const QuadraticForm& omega_b)
{
    const WilliamsonResult w = williamson_decompose(omega_b);
    return 0.5 * w.G_S * w.G_S.transpose();
}

Eigen::MatrixXd evolve_boson_covariance(const QuadraticForm& omega_b, const Eigen::MatrixXd& gamma,
                                        double t)
{
    const Eigen::MatrixXd gen = symplectic_form(omega_b.modes()) * omega_b.matrix() * t;
    const Eigen::MatrixXd S = gen.exp();
    return S * gamma * S.transpose();
}

Eigen::MatrixXd fermion_vacuum_covariance(int modes) { return -0.5 * symplectic_form(modes); }

Eigen::MatrixXd evolve_fermion_covariance(const Eigen::MatrixXd& omega_f,
                                          const Eigen::MatrixXd& gamma_f0, double t)
{
    const Eigen::MatrixXd S = (omega_f * t).exp();
    return S * gamma_f0 * S.transpose();
}

double fermion_entropy_path(const Eigen::MatrixXd& omega_f, const Eigen::MatrixXd& gamma_f0,
                            double t, int L_A)
{
    const Eigen::Index n2 = omega_f.rows();
    if (gamma_f0.rows() != n2 || gamma_f0.cols() != n2)
        throw LengthMismatch("fermionic covariance and form differ in size");
    if (L_A < 1 || 2 * L_A > n2) throw InvalidConfig("L_A outside [1, L]");
    if (max_abs(gamma_f0 + gamma_f0.transpose()) > kFormTolerance)
        throw InvalidConfig("fermionic covariance is not antisymmetric");
    {
        const Eigen::MatrixXcd c0 = std::complex<double>(0.0, 1.0) * gamma_f0.cast<std::complex<double>>();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c0, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().cwiseAbs().maxCoeff() > 0.5 + kBandTolerance)
            throw InvalidConfig("initial fermionic covariance outside [-1/2, 1/2]");
    }
    const Eigen::MatrixXd g = evolve_fermion_covariance(omega_f, gamma_f0, t);
    const Eigen::MatrixXd gA = g.topLeftCorner(2 * L_A, 2 * L_A);
    const Eigen::MatrixXcd cA = std::complex<double>(0.0, 1.0) * gA.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (cA + cA.adjoint()), Eigen::EigenvaluesOnly);
    double sum = 0.0;
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
        const double x = es.eigenvalues()(j);
        if (std::abs(x) > 0.5 + kBandTolerance) {
            std::ostringstream os;
            os << "fermionic correlation eigenvalue " << x << " outside [-1/2, 1/2]";
            throw SpectrumOutOfBand(os.str());
        }
        sum += matrix_function_kernel(std::clamp(x, -0.5, 0.5), Probe::entropy());
    }
    return -0.25 * sum;
}

double fermion_entropy_fock(const Eigen::MatrixXd& omega_f, double t, int L_A)
{
    const int L = static_cast<int>(omega_f.rows() / 2);
    if (L > 12) throw InvalidConfig("Fock-space oracle limited to L <= 12");
    if (L_A < 1 || L_A > L) throw InvalidConfig("L_A outside [1, L]");
    using cd = std::complex<double>;
    const std::uint32_t dim = 1u << L;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    // Majorana a = 2j + c acting on a basis state: single target with a phase.
    auto apply = [&](int a, std::uint32_t n, cd& coef) {
        const int j = a / 2;
        const int bit = L - 1 - j;
        const bool occ = (n >> bit) & 1u;
        const double sign = (std::popcount(n >> (bit + 1)) % 2) ? -1.0 : 1.0;
        if (a % 2 == 0)
            coef *= sign * inv_sqrt2;
        else
            coef *= cd(0.0, occ ? -sign * inv_sqrt2 : sign * inv_sqrt2);
        return n ^ (1u << bit);
    };

    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint32_t n = 0; n < dim; ++n)
        for (int a = 0; a < 2 * L; ++a)
            for (int b = 0; b < 2 * L; ++b) {
                if (omega_f(a, b) == 0.0) continue;
                cd coef(0.0, 0.5 * omega_f(a, b));
                const std::uint32_t m = apply(a, apply(b, n, coef), coef);
                H(m, n) += coef;
            }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (H + H.adjoint()));
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
    psi0(0) = 1.0;
    Eigen::VectorXcd coeff = es.eigenvectors().adjoint() * psi0;
    for (Eigen::Index j = 0; j < coeff.size(); ++j) coeff(j) *= std::exp(cd(0.0, -es.eigenvalues()(j) * t));
    const Eigen::VectorXcd psi = es.eigenvectors() * coeff;

    const std::uint32_t rows = 1u << L_A, cols = 1u << (L - L_A);
    Eigen::MatrixXcd Psi(rows, cols);
    for (std::uint32_t n = 0; n < dim; ++n) Psi(n / cols, n % cols) = psi(n);
    const Eigen::MatrixXcd rho = Psi * Psi.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> rs(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index j = 0; j < rs.eigenvalues().size(); ++j) {
        const double p = rs.eigenvalues()(j);
        if (p > 1e-300) s -= p * std::log(p);
    }
    return s;
}

bool DualityReport::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const DualityCheck& c) { return c.pass(); });
}

DualityReport duality_report(const ChainConfig& cfg, int fock_L)
{
    DualityReport rep;
    auto add = [&](std::string name, double err, double tol) {
        rep.checks.push_back({std::move(name), err, tol});
    };
    const int L = cfg.L;
    const QuadraticForm omega_b = chain_hamiltonian(cfg);
    const Eigen::MatrixXd J = symplectic_form(L);

    const WilliamsonResult will = williamson_decompose(omega_b);
    add("G_S symplectic", max_abs(will.G_S * J * will.G_S.transpose() - J), 1e-10);
    add("G_S^T Omega_b G_S = D (x) I_2",
        max_abs(will.G_S.transpose() * omega_b.matrix() * will.G_S - canonical_block(will.D, false)), 1e-8);

    std::vector<double> modes;
    const double w = std::sqrt(cfg.omega_sq);
    for (int j = 0; j < L; ++j) {
        const double k = 2.0 * M_PI * j / L;
        modes.push_back(w * std::sqrt(1.0 + 4.0 * cfg.K / cfg.omega_sq * std::pow(std::sin(k / 2.0), 2)));
    }
    std::sort(modes.begin(), modes.end());
    double mode_err = 0.0;
    for (int r = 0; r < L; ++r) mode_err = std::max(mode_err, std::abs(will.D(r) - modes[static_cast<std::size_t>(r)]));
    add("D = sorted normal-mode frequencies", mode_err, 1e-8);

    const Eigen::MatrixXd omega_f = dual_fermion_form(omega_b);
    add("Omega_f antisymmetric", max_abs(omega_f + omega_f.transpose()), 1e-12);
    const OrthogonalCanonicalForm can = orthogonal_canonical_form(omega_f);
    add("G_O orthogonal", max_abs(can.G.transpose() * can.G - Eigen::MatrixXd::Identity(2 * L, 2 * L)), 1e-10);
    add("G_O^T Omega_f G_O canonical",
        max_abs(can.G.transpose() * omega_f * can.G - canonical_block(can.d, true)), 1e-8);
    const std::vector<double> D_chol = symplectic_eigenvalues(omega_b.matrix());
    double dd = 0.0;
    for (int r = 0; r < L; ++r) dd = std::max(dd, std::abs(can.d(r) - D_chol[static_cast<std::size_t>(r)]));
    add("D' = D", dd, 1e-8);

    // Boson evolution against the mode-sum covariance at a small chain.
    ChainConfig small = cfg;
    small.L = std::min(cfg.L, 16);
    small.L_A = small.L / 2;
    const QuadraticForm post = chain_hamiltonian(small);
    const Eigen::MatrixXd g0 = ground_state_covariance(chain_hamiltonian(small, true));
    const DispersionTable table = build_dispersion(small);
    double evo = 0.0, band_b = 0.0;
    for (double t : {0.0, 0.7, 3.1, 12.9}) {
        const Eigen::MatrixXd gt = evolve_boson_covariance(post, g0, t);
        const Eigen::MatrixXd ref =
            BlockToeplitzCorrelation(covariance_time(small, table, t, small.L_A)).covariance();
        evo = std::max(evo, max_abs(gt.topLeftCorner(2 * small.L_A, 2 * small.L_A) - ref));
        const auto lam = symplectic_eigenvalues(gt.topLeftCorner(2 * small.L_A, 2 * small.L_A));
        band_b = std::max(band_b, 0.5 - *std::min_element(lam.begin(), lam.end()));
    }
    add("boson evolution = mode-sum covariance", evo, 1e-8);
    add("bosonic spectrum outside (-1/2, 1/2)", std::max(band_b, 0.0), 1e-10);

    // Fermionic side at the Fock-space size.
    ChainConfig tiny = cfg;
    tiny.L = fock_L;
    tiny.L_A = std::max(1, fock_L / 2);
    const Eigen::MatrixXd omega_ft = dual_fermion_form(chain_hamiltonian(tiny));
    const Eigen::MatrixXd vac = fermion_vacuum_covariance(fock_L);
    add("fermion S(t = 0) = 0", std::abs(fermion_entropy_path(omega_ft, vac, 0.0, tiny.L_A)), 1e-12);
    add("fermion S(L_A = L) = 0", std::abs(fermion_entropy_path(omega_ft, vac, 2.3, fock_L)), 1e-10);
    double fock = 0.0;
    for (double t : {0.4, 1.7, 5.3})
        for (int la = 1; la <= fock_L / 2; ++la)
            fock = std::max(fock, std::abs(fermion_entropy_path(omega_ft, vac, t, la) -
                                           fermion_entropy_fock(omega_ft, t, la)));
    add("fermion path = Fock-space entropy", fock, 1e-8);
    return rep;
}

}  // namespace chainent
