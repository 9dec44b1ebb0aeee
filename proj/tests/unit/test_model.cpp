#include <cmath>
#include <sstream>

#include "doctest.h"

#include "chainent/config.hpp"
#include "chainent/dispersion.hpp"
#include "chainent/error.hpp"

using namespace chainent;

TEST_CASE("config validation names the offending field")
{
    ChainConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.L = 7;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = {};
    cfg.L_A = 63;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = {};
    cfg.K0 = 0.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("K0"), InvalidConfig);
    cfg = {};
    cfg.L = 2;
    cfg.L_A = 1;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
}

TEST_CASE("key-value files carry line context")
{
    std::istringstream ok("# chain\nL = 64\nL_A = 10  # half\nomega_sq = 3.0\n");
    const ChainConfig cfg = chain_config_from(KeyValueFile::parse(ok, "run.cfg"));
    CHECK(cfg.L == 64);
    CHECK(cfg.L_A == 10);
    CHECK(cfg.omega_sq == 3.0);
    CHECK(cfg.omega0_sq == 1.5);

    std::istringstream bad("L = 64\nK = abc\n");
    CHECK_THROWS_WITH_AS(chain_config_from(KeyValueFile::parse(bad, "run.cfg")),
                         doctest::Contains("run.cfg:2"), InvalidConfig);
    std::istringstream odd("L = 63\n");
    CHECK_THROWS_AS(chain_config_from(KeyValueFile::parse(odd, "run.cfg")), InvalidConfig);
    std::istringstream garbage("L 64\n");
    CHECK_THROWS_WITH_AS(KeyValueFile::parse(garbage, "run.cfg"), doctest::Contains("run.cfg:1"), InvalidConfig);
}

TEST_CASE("config hash ignores the seed")
{
    ChainConfig a, b;
    b.seed = 99;
    CHECK(a.hash() == b.hash());
    b.K = 1.5;
    CHECK(a.hash() != b.hash());
}

TEST_CASE("dispersion table invariants")
{
    const ChainConfig cfg = reference_quench();
    const DispersionTable t = build_dispersion(cfg);
    REQUIRE(t.N == cfg.L / 2 + 1);
    for (int m = 0; m < t.N; ++m) {
        const double s = std::sqrt(1.0 + 4.0 * cfg.K / cfg.omega_sq * std::pow(std::sin(t.k[m] / 2.0), 2));
        CHECK(t.s[m] == doctest::Approx(s).epsilon(1e-15));
        CHECK(t.s[m] >= 1.0);
        CHECK(t.E_plus[m] >= 0.5);
        CHECK(std::abs(t.E_minus[m]) > 0.0);
        CHECK(t.omega_k[m] == doctest::Approx(t.omega * t.s[m]));
        CHECK(t.delta_bar[m] == ((m == 0 || m == t.N - 1) ? 0.5 : 1.0));
        // E_+^2 - E_-^2 = 1/4 for a squeezed vacuum.
        CHECK(t.E_plus[m] * t.E_plus[m] - t.E_minus[m] * t.E_minus[m] == doctest::Approx(0.25));
    }
    const DispersionTable again = build_dispersion(cfg);
    CHECK(again.E_minus == t.E_minus);
    CHECK(again.s == t.s);
}

TEST_CASE("no quench gives E_- = 0 and E_+ = 1/2")
{
    const DispersionTable t = build_dispersion(without_quench(reference_quench()));
    for (int m = 0; m < t.N; ++m) {
        CHECK(t.E_minus[m] == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(t.E_plus[m] == doctest::Approx(0.5).epsilon(1e-15));
    }
}

TEST_CASE("vanishing coupling flattens the band")
{
    ChainConfig cfg;
    cfg.K = cfg.K0 = 1e-20;
    cfg.omega0_sq = cfg.omega_sq;
    const DispersionTable t = build_dispersion(cfg);
    for (int m = 0; m < t.N; ++m) {
        CHECK(t.s[m] == 1.0);
        CHECK(t.s_bar[m] == 1.0);
    }
    const RevivalTime r = revival_time(cfg);
    CHECK(r.flat_band);
    CHECK(r.value == 0.0);
}

TEST_CASE("mode energies are even in k and match the table")
{
    const ChainConfig cfg = reference_quench();
    const DispersionTable t = build_dispersion(cfg);
    for (int m = 0; m < t.N; ++m) {
        const ModeEnergies plus = mode_energies(cfg, t.k[m]);
        const ModeEnergies minus = mode_energies(cfg, -t.k[m]);
        const ModeEnergies wrapped = mode_energies(cfg, 2.0 * M_PI * (cfg.L - m) / cfg.L);
        CHECK(plus.E_minus == doctest::Approx(t.E_minus[m]).epsilon(1e-14));
        CHECK(plus.E_minus == doctest::Approx(minus.E_minus).epsilon(1e-15));
        CHECK(plus.E_plus == doctest::Approx(wrapped.E_plus).epsilon(1e-14));
    }
}

TEST_CASE("revival time is positive and linear in L")
{
    ChainConfig cfg = reference_quench();
    const RevivalTime r = revival_time(cfg);
    CHECK_FALSE(r.flat_band);
    CHECK(r.value > 10.0);
    CHECK(r.value < 1000.0);
    cfg.L *= 2;
    CHECK(revival_time(cfg).value == doctest::Approx(2.0 * r.value).epsilon(1e-3));
}
