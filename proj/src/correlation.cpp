#include "chainent/correlation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "chainent/error.hpp"
#include "chainent/fourier.hpp"

namespace chainent {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_subsystem(int L, int L_A)
{
    if (L_A < 1 || L_A > L)
        throw InvalidConfig("subsystem size must satisfy 1 <= L_A <= L");
}

}  // namespace

BlockToeplitzCorrelation::BlockToeplitzCorrelation(BlockCoefficients coeffs)
    : coeffs_(std::move(coeffs))
{
    const auto n = coeffs_.x_bar0.size();
    if (coeffs_.p_bar0.size() != n || coeffs_.x_bar.size() != n || coeffs_.m_bar.size() != n ||
        coeffs_.p_bar.size() != n)
        throw LengthMismatch("block coefficient arrays must share one length");
}

Eigen::Matrix2d BlockToeplitzCorrelation::gamma_block(int l) const
{
    const auto a = static_cast<std::size_t>(std::abs(l));
    const auto& c = coeffs_;
    Eigen::Matrix2d g;
    g << c.x_bar0[a] + c.x_bar[a], c.m_bar[a], c.m_bar[a], c.p_bar0[a] + c.p_bar[a];
    return g;
}

Eigen::Matrix2cd BlockToeplitzCorrelation::block(int l) const
{
    const Eigen::Matrix2d g = gamma_block(l);
    Eigen::Matrix2d jg;
    jg << g(1, 0), g(1, 1), -g(0, 0), -g(0, 1);
    return std::complex<double>(0.0, 1.0) * jg.cast<std::complex<double>>();
}

Eigen::MatrixXd BlockToeplitzCorrelation::covariance() const
{
    const int n = L_A();
    Eigen::MatrixXd g(2 * n, 2 * n);
    for (int r = 0; r < n; ++r)
        for (int rp = 0; rp < n; ++rp) g.block<2, 2>(2 * r, 2 * rp) = gamma_block(r - rp);
    return g;
}

Eigen::MatrixXcd BlockToeplitzCorrelation::materialize() const
{
    const int n = L_A();
    Eigen::MatrixXcd c(2 * n, 2 * n);
    for (int r = 0; r < n; ++r)
        for (int rp = 0; rp < n; ++rp) c.block<2, 2>(2 * r, 2 * rp) = block(r - rp);
    return c;
}

Eigen::MatrixXd symplectic_form(int modes)
{
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
    for (int r = 0; r < modes; ++r) {
        j(2 * r, 2 * r + 1) = 1.0;
        j(2 * r + 1, 2 * r) = -1.0;
    }
    return j;
}

BlockCoefficients covariance_time(const ChainConfig& cfg, const DispersionTable& table, double t,
                                  int L_A)
{
    check_subsystem(cfg.L, L_A);
    const int L = cfg.L;
    const auto n = static_cast<std::size_t>(L_A);
    BlockCoefficients c;
    c.x_bar0.assign(n, 0.0);
    c.p_bar0.assign(n, 0.0);
    c.x_bar.assign(n, 0.0);
    c.m_bar.assign(n, 0.0);
    c.p_bar.assign(n, 0.0);
    for (int q = 0; q < L; ++q) {
        const double k = kTwoPi * q / L;
        const ModeEnergies e = mode_energies(cfg, k);
        const double phase = 2.0 * table.omega * e.s * t;
        const double cp = std::cos(phase), sp = std::sin(phase);
        for (std::size_t l = 0; l < n; ++l) {
            const double ckl = std::cos(kTwoPi * static_cast<double>((static_cast<long long>(q) *
                                                                      static_cast<long long>(l)) %
                                                                     L) /
                                        L);
            c.x_bar0[l] += e.E_plus / e.s * ckl;
            c.p_bar0[l] += e.E_plus * e.s * ckl;
            c.x_bar[l] += e.E_minus / e.s * ckl * cp;
            c.m_bar[l] -= e.E_minus * ckl * sp;
            c.p_bar[l] -= e.E_minus * e.s * ckl * cp;
        }
    }
    for (auto* v : {&c.x_bar0, &c.p_bar0, &c.x_bar, &c.m_bar, &c.p_bar})
        for (double& x : *v) x /= L;
    return c;
}

std::vector<double> phases_at_time(const DispersionTable& table, double t)
{
    std::vector<double> phi(table.omega_k.size());
    for (std::size_t m = 0; m < phi.size(); ++m) {
        double p = std::fmod(2.0 * table.omega_k[m] * t, kTwoPi);
        if (p < 0) p += kTwoPi;
        phi[m] = p;
    }
    return phi;
}

TorusModel::TorusModel(const ChainConfig& cfg) : TorusModel(cfg, cfg.L_A) {}

TorusModel::TorusModel(const ChainConfig& cfg, int L_A) : cfg_(cfg), L_A_(L_A)
{
    ChainConfig probe = cfg;
    probe.L_A = 1;
    probe.validate();
    check_subsystem(cfg.L, L_A);
    table_ = build_dispersion(probe);
    if (cfg.L < kFftThreshold) cos_table_ = cosine_table(cfg.L);

    const auto N = static_cast<std::size_t>(table_.N);
    std::vector<double> a(N), b(N);
    for (std::size_t m = 0; m < N; ++m) {
        a[m] = table_.E_plus[m] / table_.s[m] / table_.L;
        b[m] = table_.E_plus[m] * table_.s[m] / table_.L;
    }
    x0_.resize(static_cast<std::size_t>(L_A));
    p0_.resize(static_cast<std::size_t>(L_A));
    mode_to_lattice(a, table_.L, x0_, cos_table_);
    mode_to_lattice(b, table_.L, p0_, cos_table_);
}

BlockCoefficients TorusModel::coefficients(std::span<const double> phi) const
{
    if (static_cast<int>(phi.size()) != table_.N)
        throw LengthMismatch("phase vector has " + std::to_string(phi.size()) +
                             " entries, expected N = " + std::to_string(table_.N));
    const auto N = static_cast<std::size_t>(table_.N);
    std::vector<double> ax(N), am(N), ap(N);
    const double invL = 1.0 / table_.L;
    for (std::size_t m = 0; m < N; ++m) {
        const double e = table_.E_minus[m] * invL;
        const double c = std::cos(phi[m]), s = std::sin(phi[m]);
        ax[m] = e / table_.s[m] * c;
        am[m] = -e * s;
        ap[m] = -e * table_.s[m] * c;
    }
    BlockCoefficients out;
    out.x_bar0 = x0_;
    out.p_bar0 = p0_;
    const auto n = static_cast<std::size_t>(L_A_);
    out.x_bar.resize(n);
    out.m_bar.resize(n);
    out.p_bar.resize(n);
    mode_to_lattice(ax, table_.L, out.x_bar, cos_table_);
    mode_to_lattice(am, table_.L, out.m_bar, cos_table_);
    mode_to_lattice(ap, table_.L, out.p_bar, cos_table_);
    return out;
}

BlockToeplitzCorrelation TorusModel::correlation(std::span<const double> phi) const
{
    return BlockToeplitzCorrelation(coefficients(phi));
}

BlockToeplitzCorrelation TorusModel::static_correlation() const
{
    BlockCoefficients c;
    c.x_bar0 = x0_;
    c.p_bar0 = p0_;
    c.x_bar.assign(x0_.size(), 0.0);
    c.m_bar.assign(x0_.size(), 0.0);
    c.p_bar.assign(x0_.size(), 0.0);
    return BlockToeplitzCorrelation(std::move(c));
}

std::vector<double> TorusModel::mode_profile(int m) const
{
    const double w = 2.0 * table_.delta_bar[static_cast<std::size_t>(m)] / table_.L;
    std::vector<double> out(static_cast<std::size_t>(L_A_));
    for (int l = 0; l < L_A_; ++l) {
        const long long idx = (static_cast<long long>(m) * l) % table_.L;
        out[static_cast<std::size_t>(l)] =
            w * (cos_table_.empty() ? std::cos(kTwoPi * static_cast<double>(idx) / table_.L)
                                    : cos_table_[static_cast<std::size_t>(idx)]);
    }
    return out;
}

BlockToeplitzCorrelation correlation_phase(const ChainConfig& cfg, std::span<const double> phi,
                                           int L_A)
{
    return TorusModel(cfg, L_A).correlation(phi);
}

}  // namespace chainent
