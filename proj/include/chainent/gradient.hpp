#pragma once

#include <span>
#include <vector>

#include "chainent/correlation.hpp"
#include "chainent/probe.hpp"

namespace chainent {

struct ProbeGradient {
    double value = 0.0;
    std::vector<double> gradient;  // dO/dphi_m, m = 0..N-1

    double norm_sq() const;
};

/// Probe value and its analytic phase gradient at phi.
///
/// With gamma = R^T R and B = R J R^T, dO = (1/2) Tr[W dgamma] where
/// W = J^T R^T V q V^T R J and q = o'(lambda) / lambda on the eigenbasis V of
/// B^T B. Summing W along block diagonals gives the lattice weights that the
/// cosine transform turns into per-mode derivatives.
ProbeGradient entropy_gradient(const TorusModel& model, std::span<const double> phi, Probe probe);

std::vector<double> entropy_gradient(const ChainConfig& cfg, std::span<const double> phi, int L_A,
                                     Probe probe);

/// Central finite differences of the probe along phi_m (test oracle).
double finite_difference_derivative(const TorusModel& model, std::span<const double> phi, int m,
                                    Probe probe, double h = 1e-5);

/// Fourth-order central stencil. At h = 1e-5 the two-point rule above sits
/// on the roundoff floor of the probe (~1e-14); this one reaches ~1e-9
/// relative accuracy at h = 1e-3.
double central_difference_4(const TorusModel& model, std::span<const double> phi, int m, Probe probe,
                            double h = 1e-3);

/// Probe value at phi through the symplectic-spectrum path.
double probe_at(const TorusModel& model, std::span<const double> phi, Probe probe);

}  // namespace chainent
