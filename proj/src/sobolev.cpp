#include "chainent/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chainent/correlation.hpp"
#include "chainent/error.hpp"
#include "chainent/extremal.hpp"
#include "chainent/parallel.hpp"
#include "chainent/random.hpp"

namespace chainent {

namespace {

// phi(x) = e^x - x - 1
double phi_fn(double x)
{
    return std::expm1(x) - x;
}

struct Weighted {
    double log_mean_w;  // ln < w >
    double mean_dev;    // < w dev > / < w >
    double ess;         // (sum w)^2 / sum w^2
    std::vector<double> w;  // normalised to max 1
};

Weighted weigh(const std::vector<double>& dev, double u)
{
    Weighted r;
    double top = -std::numeric_limits<double>::infinity();
    for (double d : dev) top = std::max(top, u * d);
    r.w.resize(dev.size());
    double sw = 0.0, sw2 = 0.0, swd = 0.0;
    for (std::size_t i = 0; i < dev.size(); ++i) {
        const double w = std::exp(u * dev[i] - top);
        r.w[i] = w;
        sw += w;
        sw2 += w * w;
        swd += w * dev[i];
    }
    const double n = static_cast<double>(dev.size());
    r.log_mean_w = top + std::log(sw / n);
    r.mean_dev = swd / sw;
    r.ess = sw * sw / sw2;
    return r;
}

}  // namespace

std::vector<double> symmetric_log_grid(double u_min, double u_max, int per_side)
{
    if (!(u_min > 0.0) || !(u_max > u_min) || per_side < 3)
        throw InvalidConfig("u grid needs 0 < u_min < u_max and at least 3 points per side");
    std::vector<double> pos(static_cast<std::size_t>(per_side));
    const double r = std::log(u_max / u_min) / (per_side - 1);
    for (int i = 0; i < per_side; ++i) pos[static_cast<std::size_t>(i)] = u_min * std::exp(r * i);
    std::vector<double> grid;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) grid.push_back(-*it);
    grid.insert(grid.end(), pos.begin(), pos.end());
    return grid;
}

std::vector<double> default_u_grid(std::span<const double> values, int per_side)
{
    double s = 0.0, s2 = 0.0;
    for (double v : values) s += v;
    const double mean = s / static_cast<double>(values.size());
    for (double v : values) s2 += (v - mean) * (v - mean);
    const double sigma = std::sqrt(s2 / static_cast<double>(values.size()));
    if (!(sigma > 0.0)) return symmetric_log_grid(1e-2, 10.0, per_side);
    return symmetric_log_grid(1e-2 / sigma, 10.0 / sigma, per_side);
}

ExtremalTable extremal_table(const ChainConfig& cfg, Probe probe, int N_s, std::uint64_t seed,
                             int workers)
{
    if (N_s < 2) throw InsufficientSamples("extremal table needs N_s >= 2");
    const TorusModel model(cfg);
    ExtremalTable t;
    t.probe = probe;
    t.O.resize(static_cast<std::size_t>(N_s));
    t.O_plus.resize(N_s, model.N());
    t.O_minus.resize(N_s, model.N());
    parallel_for(static_cast<std::size_t>(N_s), workers, [&](std::size_t i) {
        const auto phi = uniform_phases(seed, i, model.N());
        const CoordinateExtrema e = coordinate_extrema(model, probe, phi);
        t.O[i] = e.value;
        const auto row = static_cast<Eigen::Index>(i);
        for (int m = 0; m < model.N(); ++m) {
            t.O_plus(row, m) = e.inf[static_cast<std::size_t>(m)];
            t.O_minus(row, m) = e.sup[static_cast<std::size_t>(m)];
        }
    });
    return t;
}

SobolevDiagnostics sobolev_from_table(const ExtremalTable& table, std::span<const double> u_grid)
{
    const std::size_t ns = table.O.size();
    if (ns < 2) throw InsufficientSamples("Sobolev diagnostics need at least 2 samples");
    const Eigen::Index nm = table.O_plus.cols();

    double mean = 0.0;
    for (double v : table.O) mean += v;
    mean /= static_cast<double>(ns);
    std::vector<double> dev(ns);
    double var = 0.0;
    for (std::size_t i = 0; i < ns; ++i) {
        dev[i] = table.O[i] - mean;
        var += dev[i] * dev[i];
    }

    SobolevDiagnostics d;
    d.variance = var / static_cast<double>(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        for (Eigen::Index m = 0; m < nm; ++m) {
            const double up = table.O[i] - table.O_plus(row, m);
            const double dn = table.O[i] - table.O_minus(row, m);
            d.b_plus += up * up;
            d.b_minus += dn * dn;
        }
    }
    d.b_plus /= static_cast<double>(ns);
    d.b_minus /= static_cast<double>(ns);

    std::vector<double> grid(u_grid.begin(), u_grid.end());
    std::sort(grid.begin(), grid.end());
    for (double u : grid) {
        if (u == 0.0) continue;
        const Weighted w = weigh(dev, u);
        const double frac = w.ess / static_cast<double>(ns);
        if (frac < kMinEffectiveFraction) {
            ++d.dropped;
            continue;
        }
        const Eigen::MatrixXd& ext = u > 0 ? table.O_plus : table.O_minus;
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < ns; ++i) {
            const auto row = static_cast<Eigen::Index>(i);
            double s = 0.0;
            for (Eigen::Index m = 0; m < nm; ++m) s += phi_fn(-u * (table.O[i] - ext(row, m)));
            num += w.w[i] * s;
            den += w.w[i];
        }
        const double H = num / den / (u * u);
        const double b = u > 0 ? d.b_plus : d.b_minus;
        d.u.push_back(u);
        d.G.push_back(w.log_mean_w);
        d.dG.push_back(w.mean_dev);
        d.H.push_back(H);
        d.delta_F.push_back(H - 0.5 * b);
        d.ratio.push_back((H - 0.5 * b) / w.mean_dev);
        d.ess_fraction.push_back(frac);
    }

    // d/du (G/u) by central differences in u within each sign branch.
    const std::size_t n = d.u.size();
    d.lhs.assign(n, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < n; ++i) {
        auto q = [&](std::size_t j) { return d.G[j] / d.u[j]; };
        const bool has_prev = i > 0 && (d.u[i - 1] > 0) == (d.u[i] > 0);
        const bool has_next = i + 1 < n && (d.u[i + 1] > 0) == (d.u[i] > 0);
        if (has_prev && has_next)
            d.lhs[i] = (q(i + 1) - q(i - 1)) / (d.u[i + 1] - d.u[i - 1]);
        else if (has_next)
            d.lhs[i] = (q(i + 1) - q(i)) / (d.u[i + 1] - d.u[i]);
        else if (has_prev)
            d.lhs[i] = (q(i) - q(i - 1)) / (d.u[i] - d.u[i - 1]);
    }

    double c_plus = -std::numeric_limits<double>::infinity();
    double c_minus = std::numeric_limits<double>::infinity();
    double c_minus_sup = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(d.ratio[i])) continue;
        if (d.u[i] > 0) {
            c_plus = std::max(c_plus, d.ratio[i]);
        } else {
            c_minus = std::min(c_minus, d.ratio[i]);
            c_minus_sup = std::max(c_minus_sup, d.ratio[i]);
        }
    }
    d.c_plus = std::isfinite(c_plus) ? c_plus : 0.0;
    d.c_minus = std::isfinite(c_minus) ? c_minus : 0.0;
    d.c_minus_sup = std::isfinite(c_minus_sup) ? c_minus_sup : 0.0;
    return d;
}

SobolevDiagnostics sobolev_diagnostics(const ChainConfig& cfg, Probe probe, int N_s,
                                       std::span<const double> u_grid, std::uint64_t seed,
                                       int workers)
{
    if (N_s < 500) throw InsufficientSamples("Sobolev diagnostics need N_s >= 500");
    return sobolev_from_table(extremal_table(cfg, probe, N_s, seed, workers), u_grid);
}

}  // namespace chainent
