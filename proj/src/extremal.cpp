#include "chainent/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chainent/spectrum.hpp"

namespace chainent {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Refines around grid index `best` of a uniform grid; sign = +1 for min, -1 for max.
double refine(const CoordinateSlice& f, const std::vector<double>& grid_values, int best,
              double sign)
{
    const int n = static_cast<int>(grid_values.size());
    const double step = kTwoPi / n;
    const double center = best * step;
    auto g = [&](double th) { return sign * f(th); };
    const auto [x, fx] = golden_section_min(g, center - step, center + step, kExtremalTolerance);
    (void)x;
    return std::min(fx, sign * grid_values[static_cast<std::size_t>(best)]) * sign;
}

}  // namespace

CoordinateSlice::CoordinateSlice(const TorusModel& model, std::span<const double> phi, int m,
                                 Probe probe)
    : model_(model), probe_(probe), rest_(model.coefficients(phi))
{
    const auto& t = model.table();
    const auto i = static_cast<std::size_t>(m);
    const std::vector<double> w = model.mode_profile(m);
    ax_.resize(w.size());
    am_.resize(w.size());
    ap_.resize(w.size());
    for (std::size_t l = 0; l < w.size(); ++l) {
        ax_[l] = t.E_minus[i] / t.s[i] * w[l];
        am_[l] = -t.E_minus[i] * w[l];
        ap_[l] = -t.E_minus[i] * t.s[i] * w[l];
    }
    base_value_ = probe_value(BlockToeplitzCorrelation(rest_), probe_);
    const double c = std::cos(phi[i]), s = std::sin(phi[i]);
    for (std::size_t l = 0; l < w.size(); ++l) {
        rest_.x_bar[l] -= ax_[l] * c;
        rest_.m_bar[l] -= am_[l] * s;
        rest_.p_bar[l] -= ap_[l] * c;
    }
}

double CoordinateSlice::operator()(double theta) const
{
    BlockCoefficients c = rest_;
    const double co = std::cos(theta), si = std::sin(theta);
    for (std::size_t l = 0; l < ax_.size(); ++l) {
        c.x_bar[l] += ax_[l] * co;
        c.m_bar[l] += am_[l] * si;
        c.p_bar[l] += ap_[l] * co;
    }
    return probe_value(BlockToeplitzCorrelation(std::move(c)), probe_);
}

double extremal_over_coordinate(const TorusModel& model, Probe probe, std::span<const double> phi,
                                int m, Extremum which)
{
    const CoordinateSlice f(model, phi, m, probe);
    std::vector<double> vals(kExtremalGrid);
    for (int j = 0; j < kExtremalGrid; ++j) vals[static_cast<std::size_t>(j)] = f(j * kTwoPi / kExtremalGrid);
    const double sign = which == Extremum::Inf ? 1.0 : -1.0;
    const auto it = which == Extremum::Inf ? std::min_element(vals.begin(), vals.end())
                                           : std::max_element(vals.begin(), vals.end());
    const double r = refine(f, vals, static_cast<int>(it - vals.begin()), sign);
    return which == Extremum::Inf ? std::min(r, f.value_at_base()) : std::max(r, f.value_at_base());
}

CoordinateExtrema coordinate_extrema(const TorusModel& model, Probe probe,
                                     std::span<const double> phi)
{
    CoordinateExtrema out;
    const auto N = static_cast<std::size_t>(model.N());
    out.inf.resize(N);
    out.sup.resize(N);
    std::vector<double> vals(kExtremalGrid);
    for (std::size_t m = 0; m < N; ++m) {
        const CoordinateSlice f(model, phi, static_cast<int>(m), probe);
        out.value = f.value_at_base();
        for (int j = 0; j < kExtremalGrid; ++j) vals[static_cast<std::size_t>(j)] = f(j * kTwoPi / kExtremalGrid);
        const auto lo = std::min_element(vals.begin(), vals.end()) - vals.begin();
        const auto hi = std::max_element(vals.begin(), vals.end()) - vals.begin();
        out.inf[m] = std::min(refine(f, vals, static_cast<int>(lo), 1.0), out.value);
        out.sup[m] = std::max(refine(f, vals, static_cast<int>(hi), -1.0), out.value);
    }
    return out;
}

double extremal_dense(const TorusModel& model, Probe probe, std::span<const double> phi, int m,
                      Extremum which, int points)
{
    const CoordinateSlice f(model, phi, m, probe);
    double best = f.value_at_base();
    for (int j = 0; j < points; ++j) {
        const double v = f(j * kTwoPi / points);
        best = which == Extremum::Inf ? std::min(best, v) : std::max(best, v);
    }
    return best;
}

}  // namespace chainent
