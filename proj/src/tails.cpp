#include "chainent/tails.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/minima.hpp>

#include "chainent/error.hpp"

namespace chainent {

namespace {

struct TailPoints {
    std::vector<double> eps, y;  // y = -ln P
};

TailPoints select(const std::vector<double>& eps, const std::vector<double>& p)
{
    TailPoints t;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (eps[i] > 0.0 && p[i] >= kTailFitLow && p[i] <= kTailFitHigh) {
            t.eps.push_back(eps[i]);
            t.y.push_back(-std::log(p[i]));
        }
    }
    return t;
}

double rms_residual(const TailPoints& t, double b, double c)
{
    double s = 0.0;
    for (std::size_t i = 0; i < t.eps.size(); ++i) {
        const double e = t.eps[i];
        const double r = t.y[i] - e * e / (2.0 * (b + c * e));
        s += r * r;
    }
    return std::sqrt(s / static_cast<double>(t.eps.size()));
}

// Closed-form least squares of y = beta eps^2.
double gaussian_b(const TailPoints& t)
{
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < t.eps.size(); ++i) {
        const double e2 = t.eps[i] * t.eps[i];
        num += t.y[i] * e2;
        den += e2 * e2;
    }
    return den / (2.0 * num);
}

constexpr int kBits = 40;

// Best b for fixed c, searched in log space around the Gaussian estimate.
std::pair<double, double> best_b(const TailPoints& t, double c, double b0)
{
    auto f = [&](double lb) { return rms_residual(t, std::exp(lb), c); };
    const auto [lb, r] = boost::math::tools::brent_find_minima(f, std::log(b0) - 12.0,
                                                               std::log(b0) + 6.0, kBits);
    return {std::exp(lb), r};
}

}  // namespace

TailCurve tail_probabilities(std::span<const double> values, std::span<const double> eps_grid)
{
    if (values.size() < kMinTailSamples)
        throw InsufficientSamples("tail probabilities need at least 1000 samples");
    TailCurve t;
    t.count = values.size();
    double s = 0.0;
    for (double v : values) s += v;
    t.mean = s / static_cast<double>(values.size());

    std::vector<double> dev(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) dev[i] = values[i] - t.mean;
    std::sort(dev.begin(), dev.end());
    const double n = static_cast<double>(dev.size());

    t.epsilon.assign(eps_grid.begin(), eps_grid.end());
    for (double e : t.epsilon) {
        const auto up = dev.end() - std::lower_bound(dev.begin(), dev.end(), e);
        const auto dn = std::upper_bound(dev.begin(), dev.end(), -e) - dev.begin();
        t.p_plus.push_back(static_cast<double>(up) / n);
        t.p_minus.push_back(static_cast<double>(dn) / n);
    }
    return t;
}

std::vector<double> default_eps_grid(std::span<const double> values, int points)
{
    double s = 0.0;
    for (double v : values) s += v;
    const double mean = values.empty() ? 0.0 : s / static_cast<double>(values.size());
    double top = 0.0;
    for (double v : values) top = std::max(top, std::abs(v - mean));
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = top * i / (points - 1);
    return grid;
}

ConcentrationFit fit_concentration(const TailCurve& tails)
{
    const TailPoints up = select(tails.epsilon, tails.p_plus);
    const TailPoints dn = select(tails.epsilon, tails.p_minus);
    if (up.eps.size() < 2 || dn.eps.size() < 2)
        throw DegenerateFit("tail fit range P in [1e-3, 0.3] holds fewer than two points");

    ConcentrationFit fit;
    fit.points_plus = static_cast<int>(up.eps.size());
    fit.points_minus = static_cast<int>(dn.eps.size());
    fit.b_plus_hat = gaussian_b(up);
    fit.residual_plus = rms_residual(up, fit.b_plus_hat, 0.0);
    fit.b_minus_gauss_hat = gaussian_b(dn);
    fit.residual_minus_gauss = rms_residual(dn, fit.b_minus_gauss_hat, 0.0);

    // Profile over c >= 0: scale c by b/eps_max so the search box is dimensionless.
    const double b0 = fit.b_minus_gauss_hat;
    const double eps_max = *std::max_element(dn.eps.begin(), dn.eps.end());
    const double c_scale = b0 / eps_max;
    auto profile = [&](double c) { return best_b(dn, c, b0).second; };
    const auto [c_opt, r_opt] = boost::math::tools::brent_find_minima(
        [&](double x) { return profile(c_scale * x * x); }, 0.0, 10.0, kBits);
    const double c_best = c_scale * c_opt * c_opt;
    const auto [b_best, r_best] = best_b(dn, c_best, b0);
    (void)r_opt;
    if (r_best < fit.residual_minus_gauss) {
        fit.b_minus_hat = b_best;
        fit.c_hat = c_best;
        fit.residual_minus_gamma = r_best;
    } else {
        fit.b_minus_hat = fit.b_minus_gauss_hat;
        fit.c_hat = 0.0;
        fit.residual_minus_gamma = fit.residual_minus_gauss;
    }
    return fit;
}

TailComparison deepest_resolvable(const TailCurve& tails, std::size_t min_count)
{
    TailComparison best;
    const double floor = static_cast<double>(min_count) / static_cast<double>(tails.count);
    for (std::size_t i = 0; i < tails.epsilon.size(); ++i) {
        if (std::min(tails.p_plus[i], tails.p_minus[i]) >= floor && tails.epsilon[i] >= best.epsilon)
            best = {tails.epsilon[i], tails.p_plus[i], tails.p_minus[i]};
    }
    return best;
}

}  // namespace chainent
