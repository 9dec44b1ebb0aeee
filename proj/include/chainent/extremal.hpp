#pragma once

#include <span>
#include <vector>

#include "chainent/correlation.hpp"
#include "chainent/probe.hpp"

namespace chainent {

enum class Extremum { Inf, Sup };

inline constexpr int kExtremalGrid = 64;
inline constexpr double kExtremalTolerance = 1e-8;

/// Probe as a function of phi_m alone, other phases frozen. Evaluation only
/// redoes the O(L_A) coefficient update and the spectrum.
class CoordinateSlice {
public:
    CoordinateSlice(const TorusModel& model, std::span<const double> phi, int m, Probe probe);

    double operator()(double theta) const;
    double value_at_base() const { return base_value_; }

private:
    const TorusModel& model_;
    Probe probe_;
    BlockCoefficients rest_;  // coefficients with mode m removed
    std::vector<double> ax_, am_, ap_;
    double base_value_ = 0.0;
};

/// O_m^+ (Inf) or O_m^- (Sup): 64-point scan over phi_m, then golden-section
/// refinement to 1e-8 around the best grid point. The result is also bounded
/// by O(phi) itself, which lies in the searched set.
double extremal_over_coordinate(const TorusModel& model, Probe probe, std::span<const double> phi,
                                int m, Extremum which);

struct CoordinateExtrema {
    double value = 0.0;
    std::vector<double> inf, sup;  // per m
};

/// Both extrema for every coordinate, sharing each grid scan.
CoordinateExtrema coordinate_extrema(const TorusModel& model, Probe probe,
                                     std::span<const double> phi);

/// Dense-grid brute force (test oracle).
double extremal_dense(const TorusModel& model, Probe probe, std::span<const double> phi, int m,
                      Extremum which, int points);

/// Golden-section minimiser of f on [a, b] to tolerance tol; returns (x, f(x)).
template <class F>
std::pair<double, double> golden_section_min(F&& f, double a, double b, double tol);

}  // namespace chainent

#include "chainent/detail/golden.hpp"
