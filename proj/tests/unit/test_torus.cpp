#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "chainent/error.hpp"
#include "chainent/extremal.hpp"
#include "chainent/gradient.hpp"
#include "chainent/ks.hpp"
#include "chainent/random.hpp"
#include "chainent/sampling.hpp"

using namespace chainent;

namespace {

ChainConfig small_quench(int L = 40, int L_A = 8)
{
    ChainConfig cfg = reference_quench();
    cfg.L = L;
    cfg.L_A = L_A;
    return cfg;
}

}  // namespace

TEST_CASE("seed derivation is stable and index-local")
{
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 5) == derive_seed(1, 5));
    CHECK(derive_seed(2, 5) != derive_seed(1, 5));
    const auto a = uniform_phases(7, 3, 10);
    const auto b = uniform_phases(7, 3, 10);
    CHECK(a == b);
    for (double x : a) {
        CHECK(x >= 0.0);
        CHECK(x < 2.0 * std::numbers::pi);
    }
}

TEST_CASE("torus sampling is reproducible and independent of worker count")
{
    const ChainConfig cfg = small_quench();
    const std::vector<Probe> probes{Probe::entropy(), Probe::renyi(2)};
    const auto one = sample_torus(cfg, probes, 64, 11, 1);
    const auto many = sample_torus(cfg, probes, 64, 11, 4);
    const auto ref = serial::sample_torus(cfg, probes, 64, 11);
    for (std::size_t p = 0; p < probes.size(); ++p) {
        CHECK(one[p].values == many[p].values);
        CHECK(one[p].values == ref[p].values);
    }
    const SampleSet single = sample_torus(cfg, Probe::renyi(2), 64, 11);
    CHECK(single.values == one[1].values);
    CHECK(one[0].cfg_hash == cfg.hash());
}

TEST_CASE("time series: parallel equals serial, window guard")
{
    const ChainConfig cfg = small_quench();
    const double rev = revival_time(cfg).value;
    const SampleSet a = sample_time_series(cfg, Probe::entropy(), 10.0 * rev, 50, 1.7, false, 4);
    const SampleSet b = serial::sample_time_series(cfg, Probe::entropy(), 10.0 * rev, 50, 1.7);
    CHECK(a.values == b.values);
    CHECK(a.times.front() == 10.0 * rev);
    CHECK_THROWS_AS(sample_time_series(cfg, Probe::entropy(), rev, 10, 1.0), WindowTooEarly);
    const SampleSet early = sample_time_series(cfg, Probe::entropy(), rev, 10, 1.0, true);
    CHECK_FALSE(early.warnings.empty());
}

TEST_CASE("no quench gives constant samples")
{
    const ChainConfig cfg = without_quench(small_quench());
    const SampleSet s = sample_torus(cfg, Probe::entropy(), 20, 3);
    CHECK(s.variance() < 1e-28);
    const double rev = revival_time(cfg).value;
    const SampleSet t = sample_time_series(cfg, Probe::entropy(), 10.0 * rev, 20, 2.0);
    CHECK(t.variance() < 1e-28);
    CHECK(t.mean() == doctest::Approx(s.mean()).epsilon(1e-12));
}

TEST_CASE("two seeds give consistent means")
{
    const ChainConfig cfg = reference_quench();
    const SampleSet a = sample_torus(cfg, Probe::entropy(), 400, 1);
    const SampleSet b = sample_torus(cfg, Probe::entropy(), 400, 2);
    const double se = std::sqrt(a.variance() / 400 + b.variance() / 400);
    CHECK(std::abs(a.mean() - b.mean()) < 3.0 * se);
}

TEST_CASE("halving dt over a doubled window keeps the statistics")
{
    const ChainConfig cfg = small_quench(64, 12);
    const DispersionTable t = build_dispersion(cfg);
    const double rev = revival_time(cfg).value;
    const double dt = default_time_step(t);
    const SampleSet a = sample_time_series(cfg, Probe::entropy(), 10.0 * rev, 800, dt);
    const SampleSet b = sample_time_series(cfg, Probe::entropy(), 10.0 * rev, 1600, dt / 2.0);
    CHECK(std::abs(a.mean() - b.mean()) < 0.1 * std::sqrt(a.variance()) + 1e-12);
    CHECK(b.variance() == doctest::Approx(a.variance()).epsilon(0.25));
}

TEST_CASE("probe is 2 pi periodic in each coordinate")
{
    const ChainConfig cfg = small_quench();
    const TorusModel model(cfg);
    auto phi = uniform_phases(4, 0, model.N());
    const double base = probe_at(model, phi, Probe::entropy());
    phi[3] += 2.0 * std::numbers::pi;
    CHECK(probe_at(model, phi, Probe::entropy()) == doctest::Approx(base).epsilon(1e-13));
}

TEST_CASE("extremal search brackets the value and matches a dense grid")
{
    const ChainConfig cfg = reference_quench();
    const TorusModel model(cfg);
    const auto phi = uniform_phases(8, 0, model.N());
    const double value = probe_at(model, phi, Probe::entropy());
    for (int m : {1, 10, 40}) {
        const double lo = extremal_over_coordinate(model, Probe::entropy(), phi, m, Extremum::Inf);
        const double hi = extremal_over_coordinate(model, Probe::entropy(), phi, m, Extremum::Sup);
        CHECK(lo <= value);
        CHECK(value <= hi);
        CHECK(lo < hi);
        CHECK(std::abs(lo - extremal_dense(model, Probe::entropy(), phi, m, Extremum::Inf, 4096)) < 1e-6);
        CHECK(std::abs(hi - extremal_dense(model, Probe::entropy(), phi, m, Extremum::Sup, 4096)) < 1e-6);
    }
    const CoordinateExtrema all = coordinate_extrema(model, Probe::entropy(), phi);
    CHECK(all.value == doctest::Approx(value).epsilon(1e-13));
    CHECK(all.inf[10] == doctest::Approx(extremal_over_coordinate(model, Probe::entropy(), phi, 10, Extremum::Inf)).epsilon(1e-12));

    const CoordinateSlice slice(model, phi, 10, Probe::entropy());
    CHECK(slice(phi[10]) == doctest::Approx(value).epsilon(1e-12));
    CHECK(slice.value_at_base() == doctest::Approx(value).epsilon(1e-13));
}

TEST_CASE("extrema collapse without a quench")
{
    const ChainConfig cfg = without_quench(small_quench());
    const TorusModel model(cfg);
    const auto phi = uniform_phases(8, 0, model.N());
    const double value = probe_at(model, phi, Probe::entropy());
    CHECK(extremal_over_coordinate(model, Probe::entropy(), phi, 2, Extremum::Inf) == doctest::Approx(value));
    CHECK(extremal_over_coordinate(model, Probe::entropy(), phi, 2, Extremum::Sup) == doctest::Approx(value));
}

TEST_CASE("golden section finds a parabola minimum")
{
    const auto [x, fx] = golden_section_min([](double t) { return (t - 0.3) * (t - 0.3) + 1.0; }, -1.0, 2.0, 1e-10);
    CHECK(x == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(fx == doctest::Approx(1.0));
}

TEST_CASE("Kolmogorov-Smirnov statistic")
{
    const std::vector<double> a{1, 2, 3, 4}, b{1, 2, 3, 4};
    CHECK(ks_two_sample(a, b).distance == 0.0);
    const std::vector<double> c{10, 11, 12, 13};
    CHECK(ks_two_sample(a, c).distance == 1.0);
    const std::vector<double> d{2.5, 3.5, 4.5, 5.5};
    CHECK(ks_two_sample(a, d).distance == doctest::Approx(0.5));
    CHECK(kolmogorov_q(0.0) == doctest::Approx(1.0));
    CHECK(kolmogorov_q(1.36) == doctest::Approx(0.049).epsilon(0.02));
}
