#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "chainent/correlation.hpp"
#include "chainent/error.hpp"
#include "chainent/gradient.hpp"
#include "chainent/probe.hpp"
#include "chainent/random.hpp"
#include "chainent/spectrum.hpp"
#include "chainent/trace_identity.hpp"

using namespace chainent;

namespace {

ChainConfig small_quench(int L = 32, int L_A = 8)
{
    ChainConfig cfg = reference_quench();
    cfg.L = L;
    cfg.L_A = L_A;
    return cfg;
}

SymplecticSpectrum spectrum_of(std::vector<double> lambda) { return {std::move(lambda)}; }

}  // namespace

TEST_CASE("covariance_time: no quench has no dynamic part")
{
    const ChainConfig cfg = without_quench(small_quench());
    const DispersionTable t = build_dispersion(cfg);
    for (double time : {0.0, 1.3, 77.0}) {
        const BlockCoefficients c = covariance_time(cfg, t, time, cfg.L_A);
        for (int l = 0; l < cfg.L_A; ++l) {
            CHECK(c.x_bar[l] == doctest::Approx(0.0).epsilon(1e-15));
            CHECK(c.m_bar[l] == doctest::Approx(0.0).epsilon(1e-15));
            CHECK(c.p_bar[l] == doctest::Approx(0.0).epsilon(1e-15));
        }
    }
}

TEST_CASE("covariance_time: m vanishes at t = 0 and x_0 matches the mode sum")
{
    const ChainConfig cfg = reference_quench();
    const DispersionTable t = build_dispersion(cfg);
    const BlockCoefficients c = covariance_time(cfg, t, 0.0, cfg.L_A);
    for (int l = 0; l < cfg.L_A; ++l) CHECK(c.m_bar[l] == 0.0);
    // Independent full-zone sum for l = 0: (1/L) sum_k E_-(k) / s_k.
    double ref = 0.0;
    for (int j = 0; j < cfg.L; ++j) {
        const ModeEnergies e = mode_energies(cfg, 2.0 * std::numbers::pi * j / cfg.L);
        ref += e.E_minus / e.s;
    }
    ref /= cfg.L;
    CHECK(c.x_bar[0] == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("phase construction equals the time-domain construction")
{
    const ChainConfig cfg = reference_quench();
    const TorusModel model(cfg);
    for (double time : {0.0, 3.7, 1234.5}) {
        const BlockCoefficients a = covariance_time(cfg, model.table(), time, cfg.L_A);
        const BlockCoefficients b = model.coefficients(phases_at_time(model.table(), time));
        for (int l = 0; l < cfg.L_A; ++l) {
            CHECK(std::abs(a.x_bar0[l] + a.x_bar[l] - b.x_bar0[l] - b.x_bar[l]) < 1e-12);
            CHECK(std::abs(a.m_bar[l] - b.m_bar[l]) < 1e-12);
            CHECK(std::abs(a.p_bar0[l] + a.p_bar[l] - b.p_bar0[l] - b.p_bar[l]) < 1e-12);
        }
    }
}

TEST_CASE("phases at pi/2 leave only the m coefficients")
{
    const ChainConfig cfg = small_quench();
    const TorusModel model(cfg);
    const std::vector<double> phi(static_cast<std::size_t>(model.N()), std::numbers::pi / 2.0);
    const BlockCoefficients c = model.coefficients(phi);
    double m_norm = 0.0;
    for (int l = 0; l < cfg.L_A; ++l) {
        CHECK(std::abs(c.x_bar[l]) < 1e-15);
        CHECK(std::abs(c.p_bar[l]) < 1e-15);
        m_norm += std::abs(c.m_bar[l]);
    }
    CHECK(m_norm > 1e-3);
    CHECK_THROWS_AS(model.coefficients(std::vector<double>(3, 0.0)), LengthMismatch);
}

TEST_CASE("materialised C is block-Toeplitz with a split spectrum")
{
    const ChainConfig cfg = small_quench(40, 12);
    const TorusModel model(cfg);
    const auto phi = uniform_phases(5, 0, model.N());
    const BlockToeplitzCorrelation corr = model.correlation(phi);
    const Eigen::MatrixXcd C = corr.materialize();
    for (int r = 0; r < cfg.L_A; ++r)
        for (int rp = 0; rp < cfg.L_A; ++rp)
            CHECK((C.block<2, 2>(2 * r, 2 * rp) - corr.block(r - rp)).norm() < 1e-15);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C);
    std::vector<double> pos;
    for (const auto& e : es.eigenvalues()) {
        CHECK(std::abs(e.imag()) < 1e-10);
        CHECK(std::abs(e.real()) >= 0.5 - 1e-8);
        if (e.real() > 0) pos.push_back(e.real());
    }
    CHECK(pos.size() == static_cast<std::size_t>(cfg.L_A));
}

TEST_CASE("uncoupled ground state and full system are pure")
{
    ChainConfig flat = without_quench(small_quench());
    flat.K = flat.K0 = 1e-20;
    const TorusModel m0(flat);
    for (double lam : symplectic_spectrum(m0.correlation(uniform_phases(1, 0, m0.N()))).lambda)
        CHECK(lam == doctest::Approx(0.5).epsilon(1e-12));

    const ChainConfig cfg = small_quench(48, 10);
    const TorusModel full(cfg, cfg.L);
    for (std::uint64_t i = 0; i < 3; ++i)
        for (double lam : symplectic_spectrum(full.correlation(uniform_phases(2, i, full.N()))).lambda)
            CHECK(std::abs(lam - 0.5) < 1e-8);
}

TEST_CASE("complementary subsystems share their entropy")
{
    const ChainConfig cfg = small_quench(40, 9);
    const TorusModel a(cfg, 9), b(cfg, 31);
    for (std::uint64_t i = 0; i < 3; ++i) {
        const auto phi = uniform_phases(3, i, a.N());
        CHECK(std::abs(probe_at(a, phi, Probe::entropy()) - probe_at(b, phi, Probe::entropy())) < 1e-8);
    }
}

TEST_CASE("entropy and Renyi closed forms")
{
    CHECK(entropy_from_spectrum(spectrum_of({0.5, 0.5, 0.5})) == 0.0);
    CHECK(entropy_from_spectrum(spectrum_of({1.0})) ==
          doctest::Approx(1.5 * std::log(1.5) - 0.5 * std::log(0.5)).epsilon(1e-15));
    CHECK(entropy_from_spectrum(spectrum_of({1.0})) == doctest::Approx(0.95477).epsilon(1e-5));
    CHECK(renyi_from_spectrum(spectrum_of({0.5, 0.5}), 3) == 0.0);
    CHECK(renyi_from_spectrum(spectrum_of({1.0}), 2) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(renyi_from_spectrum(spectrum_of({1.0}), 1), InvalidConfig);
    const auto spec = spectrum_of({0.6, 1.3, 4.0});
    double prev = entropy_from_spectrum(spec);
    for (int n = 2; n <= 8; ++n) {
        const double s = renyi_from_spectrum(spec, n);
        CHECK(s < prev);
        prev = s;
    }
}

TEST_CASE("near-1/2 eigenvalues are clamped, deeper ones rejected")
{
    Eigen::MatrixXd gamma = 0.5 * Eigen::MatrixXd::Identity(4, 4);
    gamma(0, 0) = 0.5 - 1e-12;
    for (double lam : symplectic_spectrum(gamma).lambda) CHECK(lam >= 0.5);
    gamma(0, 0) = 0.4;
    CHECK_THROWS_AS(symplectic_spectrum(gamma), SpectrumInGap);
    gamma(0, 0) = -1.0;
    CHECK_THROWS_AS(symplectic_spectrum(gamma), NotPositiveDefinite);
}

TEST_CASE("spectrum path equals the matrix-function path")
{
    const ChainConfig cfg = reference_quench();
    const TorusModel model(cfg);
    for (std::uint64_t i = 0; i < 5; ++i) {
        const auto corr = model.correlation(uniform_phases(9, i, model.N()));
        const auto spec = symplectic_spectrum(corr);
        CHECK(*std::max_element(spec.lambda.begin(), spec.lambda.end()) > 0.5 + 1e-3);
        for (int order : {1, 2, 3}) {
            const Probe p = order == 1 ? Probe::entropy() : Probe::renyi(order);
            const double a = probe_value(spec, p);
            CHECK(std::abs(a - entropy_via_matrix_function(corr, p)) <= 1e-10 * std::abs(a));
        }
    }
    ChainConfig flat = without_quench(small_quench());
    flat.K = flat.K0 = 1e-20;
    const TorusModel m0(flat);
    CHECK(std::abs(entropy_via_matrix_function(m0.static_correlation(), Probe::renyi(2))) < 1e-12);
}

TEST_CASE("reduced symplectic route matches the B^T B reference")
{
    const ChainConfig cfg = reference_quench();
    const TorusModel model(cfg);
    for (std::uint64_t i = 0; i < 5; ++i) {
        const auto phi = uniform_phases(31, i, model.N());
        const Eigen::MatrixXd g = model.correlation(phi).covariance();
        const std::vector<double> fast = symplectic_eigenvalues(g);
        const std::vector<double> ref = symplectic_eigenvalues_reference(g);
        REQUIRE(fast.size() == ref.size());
        for (std::size_t k = 0; k < ref.size(); ++k)
            CHECK(std::abs(fast[k] - ref[k]) <= 1e-12 * ref[k]);
    }
    // Williamson-type input with known values, rotated by a symplectic shear.
    const int n = 6;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) d(2 * k, 2 * k) = d(2 * k + 1, 2 * k + 1) = 0.5 + 0.3 * k;
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) s(2 * k + 1, 2 * k) = 0.4 * (k + 1);
    const std::vector<double> got = symplectic_eigenvalues(s * d * s.transpose());
    for (int k = 0; k < n; ++k) CHECK(got[k] == doctest::Approx(0.5 + 0.3 * k).epsilon(1e-13));
}

TEST_CASE("S_2 determinant route equals the spectrum route")
{
    const ChainConfig cfg = reference_quench();
    const TorusModel model(cfg);
    for (std::uint64_t i = 0; i < 5; ++i) {
        const BlockToeplitzCorrelation c = model.correlation(uniform_phases(5, i, model.N()));
        const double a = probe_value(c, Probe::renyi(2));
        const double b = probe_value(symplectic_spectrum(c), Probe::renyi(2));
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
    }
}

TEST_CASE("probe names round-trip")
{
    CHECK(Probe::parse("S") == Probe::entropy());
    CHECK(Probe::parse("S1") == Probe::entropy());
    CHECK(Probe::parse("S3") == Probe::renyi(3));
    CHECK(Probe::parse("S2").name() == "S2");
    CHECK_THROWS_AS(Probe::parse("X"), InvalidConfig);
}

TEST_CASE("analytic gradient matches central differences")
{
    const ChainConfig cfg = reference_quench();
    const TorusModel model(cfg);
    for (int order : {1, 2, 3}) {
        const Probe p = order == 1 ? Probe::entropy() : Probe::renyi(order);
        const auto phi = uniform_phases(17, static_cast<std::uint64_t>(order), model.N());
        const ProbeGradient g = entropy_gradient(model, phi, p);
        CHECK(g.value == doctest::Approx(probe_at(model, phi, p)).epsilon(1e-13));
        for (int m : {0, 1, 7, 30, model.N() - 1}) {
            const double gm = g.gradient[static_cast<std::size_t>(m)];
            const double fd4 = central_difference_4(model, phi, m, p);
            CHECK(std::abs(gm - fd4) <= 1e-6 * std::abs(fd4));
            // Two-point rule at h = 1e-5: limited by roundoff in the probe value.
            const double fd2 = finite_difference_derivative(model, phi, m, p);
            CHECK(std::abs(gm - fd2) <= 1e-9 + 1e-6 * std::abs(fd2));
        }
    }
}

TEST_CASE("gradient vanishes without a quench")
{
    const ChainConfig cfg = without_quench(small_quench());
    const auto g = entropy_gradient(cfg, uniform_phases(1, 1, cfg.L / 2 + 1), cfg.L_A, Probe::entropy());
    for (double x : g) CHECK(x == 0.0);
}

TEST_CASE("trace-derivative identity")
{
    const TraceIdentityReport r = trace_derivative_identity_check(16, 42);
    CHECK(r.symmetric_square < 1e-8);
    CHECK(r.spd_log < 1e-8);
    CHECK(r.diagonalizable_log < 1e-8);
    CHECK(r.constant_family == 0.0);
}
