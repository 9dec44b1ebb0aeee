#pragma once

#include <string>
#include <string_view>

#include "chainent/correlation.hpp"
#include "chainent/spectrum.hpp"

namespace chainent {

/// Entanglement probe: order 1 is the von Neumann entropy S, order n >= 2 the
/// Renyi entropy S_n.
struct Probe {
    int order = 1;

    static Probe entropy() { return {1}; }
    static Probe renyi(int n);
    /// Accepts "S", "S2", "S3", ... (also "S1" for S).
    static Probe parse(std::string_view text);
    std::string name() const;

    /// Contribution o(lambda) of one symplectic eigenvalue.
    double mode_value(double lambda) const;
    /// do/dlambda.
    double mode_derivative(double lambda) const;

    bool operator==(const Probe&) const = default;
};

double entropy_from_spectrum(const SymplecticSpectrum& spec);
/// Throws InvalidConfig for n < 2.
double renyi_from_spectrum(const SymplecticSpectrum& spec, int n);
double probe_value(const SymplecticSpectrum& spec, Probe probe);
/// S_2 goes through ln det gamma (one Cholesky) and skips the clamp check;
/// other orders go through the spectrum.
double probe_value(const BlockToeplitzCorrelation& corr, Probe probe);

/// O = (1/4) Tr h(C) with C diagonalised as a complex matrix. Independent of
/// the symplectic-spectrum path; raises SpectrumInGap if an eigenvalue of C
/// sits inside (-1/2 + 1e-8, 1/2 - 1e-8).
double entropy_via_matrix_function(const BlockToeplitzCorrelation& corr, Probe probe);

/// Bosonic kernel h(x) for real |x| >= 1/2 (fermionic use: |x| <= 1/2).
double matrix_function_kernel(double x, Probe probe);

}  // namespace chainent
