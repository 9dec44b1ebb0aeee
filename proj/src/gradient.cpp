#include "chainent/gradient.hpp"

#include <numeric>

#include "chainent/fourier.hpp"

namespace chainent {

double ProbeGradient::norm_sq() const
{
    return std::inner_product(gradient.begin(), gradient.end(), gradient.begin(), 0.0);
}

double probe_at(const TorusModel& model, std::span<const double> phi, Probe probe)
{
    return probe_value(symplectic_spectrum(model.correlation(phi)), probe);
}

ProbeGradient entropy_gradient(const TorusModel& model, std::span<const double> phi, Probe probe)
{
    const BlockToeplitzCorrelation corr = model.correlation(phi);
    const int n = model.L_A();
    const Eigen::Index n2 = 2 * n;
    const SymplecticFactor f = symplectic_factor(corr.covariance(), true);
    const std::vector<double> lambda = pair_roots(f.mu);

    ProbeGradient out;
    Eigen::VectorXd q(n2);
    for (int i = 0; i < n; ++i) {
        const double l = std::max(lambda[static_cast<std::size_t>(i)], 0.5);
        out.value += probe.mode_value(l);
        q(2 * i) = q(2 * i + 1) = probe.mode_derivative(l) / l;
    }

    // Y = V^T R J, W = Y^T diag(q) Y.
    Eigen::MatrixXd rj(n2, n2);
    for (Eigen::Index r = 0; r < n; ++r) {
        rj.col(2 * r) = -f.R.col(2 * r + 1);
        rj.col(2 * r + 1) = f.R.col(2 * r);
    }
    const Eigen::MatrixXd y = f.V.transpose() * rj;
    const Eigen::MatrixXd w = y.transpose() * q.asDiagonal() * y;

    const auto un = static_cast<std::size_t>(n);
    std::vector<double> dxx(un, 0.0), dm(un, 0.0), dpp(un, 0.0);
    for (int r = 0; r < n; ++r) {
        for (int rp = 0; rp < n; ++rp) {
            const auto l = static_cast<std::size_t>(std::abs(r - rp));
            dxx[l] += w(2 * r, 2 * rp);
            dm[l] += w(2 * r, 2 * rp + 1) + w(2 * r + 1, 2 * rp);
            dpp[l] += w(2 * r + 1, 2 * rp + 1);
        }
    }

    const auto& t = model.table();
    const auto N = static_cast<std::size_t>(t.N);
    std::vector<double> cx(N), cm(N), cp(N);
    lattice_to_mode(dxx, t.L, cx, model.cos_table());
    lattice_to_mode(dm, t.L, cm, model.cos_table());
    lattice_to_mode(dpp, t.L, cp, model.cos_table());

    out.gradient.resize(N);
    for (std::size_t m = 0; m < N; ++m) {
        const double pref = t.delta_bar[m] * t.E_minus[m] / t.L;  // (1/2)(2 delta_bar / L) E_-
        const double c = std::cos(phi[m]), s = std::sin(phi[m]);
        out.gradient[m] = pref * (-s / t.s[m] * cx[m] - c * cm[m] + t.s[m] * s * cp[m]);
    }
    return out;
}

std::vector<double> entropy_gradient(const ChainConfig& cfg, std::span<const double> phi, int L_A,
                                     Probe probe)
{
    return entropy_gradient(TorusModel(cfg, L_A), phi, probe).gradient;
}

double finite_difference_derivative(const TorusModel& model, std::span<const double> phi, int m,
                                    Probe probe, double h)
{
    std::vector<double> p(phi.begin(), phi.end());
    const auto i = static_cast<std::size_t>(m);
    p[i] = phi[i] + h;
    const double up = probe_at(model, p, probe);
    p[i] = phi[i] - h;
    const double dn = probe_at(model, p, probe);
    return (up - dn) / (2.0 * h);
}

double central_difference_4(const TorusModel& model, std::span<const double> phi, int m, Probe probe,
                            double h)
{
    std::vector<double> p(phi.begin(), phi.end());
    const auto i = static_cast<std::size_t>(m);
    auto at = [&](double shift) {
        p[i] = phi[i] + shift;
        return probe_at(model, p, probe);
    };
    return (8.0 * (at(h) - at(-h)) - (at(2.0 * h) - at(-2.0 * h))) / (12.0 * h);
}

}  // namespace chainent
