#include "chainent/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <sstream>

#include "chainent/correlation.hpp"
#include "chainent/error.hpp"
#include "chainent/gradient.hpp"
#include "chainent/parallel.hpp"
#include "chainent/random.hpp"
#include "chainent/sampling.hpp"

namespace chainent {

namespace {

double mean_of(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Standard error of the population variance by batch means over 10 batches.
double batch_variance_error(const std::vector<double>& v)
{
    const std::size_t batches = 10;
    const std::size_t size = v.size() / batches;
    if (size < 2) return 0.0;
    std::vector<double> est;
    for (std::size_t b = 0; b < batches; ++b) {
        std::vector<double> part(v.begin() + static_cast<long>(b * size),
                                 v.begin() + static_cast<long>((b + 1) * size));
        const double mu = mean_of(part);
        double s = 0.0;
        for (double x : part) s += (x - mu) * (x - mu);
        est.push_back(s / static_cast<double>(part.size()));
    }
    const double mu = mean_of(est);
    double s = 0.0;
    for (double x : est) s += (x - mu) * (x - mu);
    return std::sqrt(s / (batches - 1) / batches);
}

}  // namespace

ScalingPoint measure_variance(const ChainConfig& cfg, Probe probe, const ScalingOptions& options,
                              std::uint64_t seed)
{
    ScalingPoint p;
    p.L = cfg.L;
    p.L_A = cfg.L_A;
    p.probe = probe;
    p.gradient_route = cfg.L > options.gradient_route_above;
    if (!p.gradient_route) {
        const SampleSet s = sample_torus(cfg, probe, options.samples, seed, options.workers);
        p.samples = options.samples;
        p.variance = s.variance();
        p.std_error = batch_variance_error(s.values);
        return p;
    }
    const TorusModel model(cfg);
    std::vector<double> norms(static_cast<std::size_t>(options.gradient_samples));
    parallel_for(norms.size(), options.workers, [&](std::size_t i) {
        norms[i] = entropy_gradient(model, uniform_phases(seed, i, model.N()), probe).norm_sq();
    });
    const double mu = mean_of(norms);
    double s = 0.0;
    for (double x : norms) s += (x - mu) * (x - mu);
    p.samples = options.gradient_samples;
    p.variance = options.lipschitz_C * mu;
    p.std_error = norms.size() > 1
                      ? options.lipschitz_C * std::sqrt(s / (norms.size() - 1) / norms.size())
                      : 0.0;
    return p;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw InsufficientSamples("slope fit needs at least two points");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const double mx = mean_of(lx), my = mean_of(ly);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

std::pair<double, double> fit_scaling_law(const std::vector<ScalingPoint>& points)
{
    if (points.size() < 2) throw InsufficientSamples("scaling fit needs at least two points");
    // Minimise sum ((a x + b y) / V - 1)^2 with x = 1/L, y = L_A^3 / L^2.
    Eigen::MatrixXd A(static_cast<Eigen::Index>(points.size()), 2);
    Eigen::VectorXd rhs = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double L = points[i].L, LA = points[i].L_A, V = points[i].variance;
        A(static_cast<Eigen::Index>(i), 0) = 1.0 / L / V;
        A(static_cast<Eigen::Index>(i), 1) = LA * LA * LA / (L * L) / V;
    }
    Eigen::Vector2d ab = A.colPivHouseholderQr().solve(rhs);
    if (ab(0) < 0.0 || ab(1) < 0.0) {
        // One-term fits; keep the better of the two non-negative ones.
        double best = std::numeric_limits<double>::infinity();
        Eigen::Vector2d pick = Eigen::Vector2d::Zero();
        for (int c = 0; c < 2; ++c) {
            const double coef = A.col(c).dot(rhs) / A.col(c).squaredNorm();
            const double r = (A.col(c) * coef - rhs).squaredNorm();
            if (coef >= 0.0 && r < best) {
                best = r;
                pick = Eigen::Vector2d::Zero();
                pick(c) = coef;
            }
        }
        ab = pick;
    }
    return {ab(0), ab(1)};
}

ScalingResult variance_scaling_sweep(const ChainConfig& cfg_template, const std::vector<int>& L_list,
                                     const std::vector<int>& L_A_list,
                                     const std::vector<Probe>& probes, const ScalingOptions& options,
                                     std::uint64_t seed)
{
    if (L_list.empty() || L_A_list.empty() || probes.empty())
        throw InvalidConfig("scaling sweep needs non-empty L, L_A and probe lists");
    const int la_min = *std::min_element(L_A_list.begin(), L_A_list.end());
    const int l_max = *std::max_element(L_list.begin(), L_list.end());
    std::set<std::pair<int, int>> grid;
    for (int L : L_list) grid.insert({L, la_min});
    for (int LA : L_A_list) grid.insert({l_max, LA});

    ScalingResult res;
    bool below = false, above = false;
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [L, LA] : grid) {
        if (LA > L / 2) {
            std::ostringstream os;
            os << "skipped (L=" << L << ", L_A=" << LA << "): L_A exceeds L/2";
            res.warnings.push_back(os.str());
            continue;
        }
        const double cross = std::cbrt(static_cast<double>(L));
        below = below || LA < cross;
        above = above || LA > cross;
        if (L > options.gradient_route_above && LA < cross) {
            std::ostringstream os;
            os << "gradient route at (L=" << L << ", L_A=" << LA
               << ") in the edge regime: Var / <|dO|^2> drifts from 1/2 towards 1 there";
            res.warnings.push_back(os.str());
        }
        pairs.emplace_back(L, LA);
    }
    if (!(below && above))
        res.warnings.push_back("regime coverage: all points lie on one side of L_A ~ L^(1/3)");

    for (const Probe& probe : probes) {
        std::vector<ScalingPoint> mine;
        for (const auto& [L, LA] : pairs) {
            ChainConfig cfg = cfg_template;
            cfg.L = L;
            cfg.L_A = LA;
            cfg.validate();
            mine.push_back(measure_variance(cfg, probe, options, derive_seed(seed, mix64(L) ^ LA)));
        }
        ScalingFit fit;
        fit.probe = probe;
        std::vector<double> xs, ys;
        for (const auto& p : mine)
            if (p.L_A == la_min) {
                xs.push_back(p.L);
                ys.push_back(p.variance);
            }
        if (xs.size() >= 2) fit.slope_L = log_log_slope(xs, ys);
        xs.clear();
        ys.clear();
        for (const auto& p : mine)
            if (p.L == l_max) {
                xs.push_back(p.L_A);
                ys.push_back(p.variance);
            }
        if (xs.size() >= 2) fit.slope_LA = log_log_slope(xs, ys);
        if (mine.size() >= 2) {
            std::tie(fit.a_hat, fit.b_hat) = fit_scaling_law(mine);
            for (const auto& p : mine) {
                const double L = p.L, LA = p.L_A;
                const double model = fit.a_hat / L + fit.b_hat * LA * LA * LA / (L * L);
                fit.collapse_residual = std::max(fit.collapse_residual, std::abs(p.variance / model - 1.0));
            }
        }
        res.fits.push_back(fit);
        res.points.insert(res.points.end(), mine.begin(), mine.end());
    }
    if (options.with_quadrature) {
        QuadratureOptions q;
        q.lipschitz_C = options.lipschitz_C;
        res.quadrature = scaling_coefficients_quadrature(cfg_template, q);
    }
    return res;
}

int measure_decay_length(const ChainConfig& cfg, int L_ref, double threshold)
{
    ChainConfig c = cfg;
    c.L = L_ref;
    const TorusModel model(c, L_ref / 2);
    const auto& co = model.static_correlation().coeffs();
    const double n0 = std::hypot(co.x_bar0[0], co.p_bar0[0]);
    for (int l = 1; l < L_ref / 2; ++l) {
        const auto i = static_cast<std::size_t>(l);
        if (std::hypot(co.x_bar0[i], co.p_bar0[i]) <= threshold * n0) return l;
    }
    return L_ref / 2;
}

ScalingCoefficients scaling_coefficients_quadrature(const ChainConfig& cfg,
                                                    const QuadratureOptions& options)
{
    ScalingCoefficients out;
    ChainConfig ref = cfg;
    ref.L = options.L_ref;
    ref.L_A = 1;
    ref.validate();
    out.L_e = options.L_e ? *options.L_e : measure_decay_length(cfg, options.L_ref, options.decay_threshold);

    if (!cfg.has_quench()) return out;

    // Subsystem wide enough that the middle site sees no edge.
    const int L_A = std::min(options.L_ref / 2, 4 * out.L_e + 1);
    const TorusModel model(ref, L_A);
    const Eigen::MatrixXd gamma0 = model.static_correlation().covariance();
    const Eigen::MatrixXd M = symplectic_form(L_A) * gamma0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(M, true);
    const Eigen::MatrixXcd P = es.eigenvectors();
    const Eigen::MatrixXcd Pinv = P.inverse();
    // Eigenvalues of C_0 = i M are e = i mu.
    const std::complex<double> I(0.0, 1.0);
    Eigen::VectorXcd f(M.rows());
    for (Eigen::Index j = 0; j < M.rows(); ++j) {
        const std::complex<double> e = I * es.eigenvalues()(j);
        f(j) = std::log((e + 0.5) / (e - 0.5));
    }
    const Eigen::MatrixXcd varsigma = P * f.asDiagonal() * Pinv;
    const Eigen::MatrixXd kappa_full =
        (-(M * M) - 0.25 * Eigen::MatrixXd::Identity(M.rows(), M.cols())).inverse();
    const Eigen::Index r = 2 * (L_A / 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            out.zeta(a, b) = (varsigma(r + a, r + b) / I).real();
            out.kappa(a, b) = kappa_full(r + a, r + b);
        }

    const int n = options.points;
    std::vector<double> em2(static_cast<std::size_t>(n)), s(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double k = -std::numbers::pi + 2.0 * std::numbers::pi * j / n;
        const ModeEnergies e = mode_energies(cfg, k);
        em2[static_cast<std::size_t>(j)] = e.E_minus * e.E_minus;
        s[static_cast<std::size_t>(j)] = e.s;
    }

    const Eigen::Matrix2d& z = out.zeta;
    double ia = 0.0;
    for (int j = 0; j < n; ++j) {
        const double sk = s[static_cast<std::size_t>(j)];
        const double t1 = z(1, 1) - z(0, 0);
        const double t2 = z(0, 1) / sk + z(1, 0) * sk;
        ia += em2[static_cast<std::size_t>(j)] * (t1 * t1 + t2 * t2);
    }
    ia /= n;
    out.a = options.lipschitz_C * out.L_e * out.L_e / 8.0 * ia;

    const Eigen::Matrix2d& q = out.kappa;
    double ib = 0.0;
    for (int j = 0; j < n; ++j) {
        const double sk = s[static_cast<std::size_t>(j)];
        for (int jp = 0; jp < n; ++jp) {
            const double sp = s[static_cast<std::size_t>(jp)];
            const double cs = q(0, 0) * sk / sp + q(1, 1) * sp / sk;
            const double ss = -q(0, 1) / sp + q(1, 0) * sp;
            const double cc = -q(0, 1) / sk + q(1, 0) * sk;
            const double sc = -(q(0, 0) + q(1, 1));
            ib += em2[static_cast<std::size_t>(j)] * em2[static_cast<std::size_t>(jp)] *
                  (cs * cs + ss * ss + cc * cc + sc * sc);
        }
    }
    ib /= static_cast<double>(n) * n;
    out.b = options.lipschitz_C / 8.0 * ib;
    return out;
}

}  // namespace chainent
