#include "chainent/probe.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "chainent/error.hpp"

namespace chainent {

namespace {

constexpr double kLogTermCutoff = 1e-12;

// t ln|t| with the t -> 0 limit.
double xlogx(double t)
{
    const double a = std::abs(t);
    return a < kLogTermCutoff ? 0.0 : t * std::log(a);
}

}  // namespace

Probe Probe::renyi(int n)
{
    if (n < 2) throw InvalidConfig("Renyi order must be at least 2");
    return {n};
}

Probe Probe::parse(std::string_view text)
{
    if (text.empty() || text.front() != 'S') throw InvalidConfig("unknown probe `" + std::string(text) + "`");
    if (text.size() == 1) return entropy();
    int n = 0;
    const auto* begin = text.data() + 1;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, n);
    if (ec != std::errc() || ptr != end || n < 1)
        throw InvalidConfig("unknown probe `" + std::string(text) + "`");
    return n == 1 ? entropy() : renyi(n);
}

std::string Probe::name() const
{
    return order == 1 ? "S" : "S" + std::to_string(order);
}

double Probe::mode_value(double lambda) const
{
    const double a = lambda + 0.5, b = lambda - 0.5;
    if (order == 1) return a * std::log(a) - (b < kLogTermCutoff ? 0.0 : b * std::log(b));
    const double ratio = b / a;
    return (order * std::log(a) + std::log1p(-std::pow(ratio, order))) / (order - 1);
}

double Probe::mode_derivative(double lambda) const
{
    const double a = lambda + 0.5, b = std::max(lambda - 0.5, kLogTermCutoff);
    if (order == 1) return std::log(a / b);
    const int n = order;
    const double ratio = b / a;
    // (n/(n-1)) (a^{n-1} - b^{n-1}) / (a^n - b^n), scaled by a^n.
    return n / (n - 1.0) * (1.0 - std::pow(ratio, n - 1)) / (a * (1.0 - std::pow(ratio, n)));
}

double entropy_from_spectrum(const SymplecticSpectrum& spec)
{
    double s = 0.0;
    for (double l : spec.lambda) s += Probe::entropy().mode_value(l);
    return s;
}

double renyi_from_spectrum(const SymplecticSpectrum& spec, int n)
{
    const Probe p = Probe::renyi(n);
    double s = 0.0;
    for (double l : spec.lambda) s += p.mode_value(l);
    return s;
}

double probe_value(const SymplecticSpectrum& spec, Probe probe)
{
    return probe.order == 1 ? entropy_from_spectrum(spec) : renyi_from_spectrum(spec, probe.order);
}

double probe_value(const BlockToeplitzCorrelation& corr, Probe probe)
{
    if (probe.order != 2) return probe_value(symplectic_spectrum(corr), probe);
    // S_2 = sum ln(2 lambda) = L_A ln 2 + (1/2) ln det gamma
    Eigen::LLT<Eigen::MatrixXd> llt(corr.covariance());
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("covariance is not positive definite");
    const double log_det_half = llt.matrixLLT().diagonal().array().log().sum();
    return corr.L_A() * std::numbers::ln2 + log_det_half;
}

double matrix_function_kernel(double x, Probe probe)
{
    const double up = 1.0 + 2.0 * x, dn = 1.0 - 2.0 * x;
    if (probe.order == 1) return xlogx(up) + xlogx(dn) - 2.0 * std::numbers::ln2;
    const int n = probe.order;
    const double diff = std::pow(2.0 * x + 1.0, n) - std::pow(2.0 * x - 1.0, n);
    return (std::log(diff * diff) - 2.0 * n * std::numbers::ln2) / (n - 1);
}

double entropy_via_matrix_function(const BlockToeplitzCorrelation& corr, Probe probe)
{
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(corr.materialize(), false);
    if (es.info() != Eigen::Success) throw NumericalDegeneracy("complex eigensolver failed");
    double sum = 0.0;
    for (const auto& e : es.eigenvalues()) {
        const double x = e.real();
        if (std::abs(x) < 0.5 - 1e-8) throw SpectrumInGap("eigenvalue of C inside (-1/2, 1/2)");
        // Round-off can put |x| a hair below 1/2; the kernel is even and flat there.
        sum += matrix_function_kernel(std::max(std::abs(x), 0.5), probe);
    }
    return 0.25 * sum;
}

}  // namespace chainent
