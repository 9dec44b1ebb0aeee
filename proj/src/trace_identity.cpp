#include "chainent/trace_identity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "chainent/error.hpp"

namespace chainent {

namespace {

using Cplx = std::complex<double>;
using Family = std::function<Eigen::MatrixXd(double)>;

// tr f(M) and tr(f'(M) X) through a general eigendecomposition.
template <class F>
Cplx trace_fn(const Eigen::MatrixXd& m, F f)
{
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    Cplx acc = 0.0;
    for (const auto& e : es.eigenvalues()) acc += f(e);
    return acc;
}

template <class F>
Cplx trace_fprime_times(const Eigen::MatrixXd& m, const Eigen::MatrixXd& x, F fprime)
{
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, true);
    const Eigen::MatrixXcd p = es.eigenvectors();
    const Eigen::MatrixXcd pinv = p.inverse();
    Eigen::VectorXcd d(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = fprime(es.eigenvalues()(i));
    const Eigen::MatrixXcd fp = p * d.asDiagonal() * pinv;
    return (fp * x.cast<Cplx>()).trace();
}

template <class F, class Fp>
double check(const Family& fam, F f, Fp fprime, double s0, double h = 1e-5)
{
    const Cplx lhs = (trace_fn(fam(s0 + h), f) - trace_fn(fam(s0 - h), f)) / (2.0 * h);
    const Eigen::MatrixXd dm = (fam(s0 + h) - fam(s0 - h)) / (2.0 * h);
    const Cplx rhs = trace_fprime_times(fam(s0), dm, fprime);
    return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

Eigen::MatrixXd random_matrix(int n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
    return m;
}

}  // namespace

double TraceIdentityReport::max_error() const
{
    return std::max({symmetric_square, spd_log, diagonalizable_log, constant_family});
}

TraceIdentityReport trace_derivative_identity_check(int size, std::uint64_t seed)
{
    if (size < 2) throw InvalidConfig("trace identity check needs size >= 2");
    std::mt19937_64 rng(seed);
    const int n = size;
    auto sq = [](Cplx z) { return z * z; };
    auto sq_p = [](Cplx z) { return 2.0 * z; };
    auto lg = [](Cplx z) { return std::log(z); };
    auto lg_p = [](Cplx z) { return 1.0 / z; };

    TraceIdentityReport rep;

    Eigen::MatrixXd a = random_matrix(n, rng), b = random_matrix(n, rng);
    const Eigen::MatrixXd m0 = (a + a.transpose()) / 2, m1 = (b + b.transpose()) / 2;
    rep.symmetric_square = check([&](double s) { return Eigen::MatrixXd(m0 + s * m1); }, sq, sq_p, 0.3);

    // Positive-definite family: A^T A + n I + s S with small symmetric S.
    a = random_matrix(n, rng);
    b = random_matrix(n, rng);
    const Eigen::MatrixXd p0 = a.transpose() * a + n * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd p1 = (b + b.transpose()) / 2;
    rep.spd_log = check([&](double s) { return Eigen::MatrixXd(p0 + s * p1); }, lg, lg_p, 0.2);

    // Non-normal but diagonalizable: P diag(d0 + s d1) P^{-1}, positive d.
    const Eigen::MatrixXd pm = random_matrix(n, rng) + 2.0 * n * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd pinv = pm.inverse();
    std::uniform_real_distribution<double> u(1.0, 3.0), v(-0.5, 0.5);
    Eigen::VectorXd d0(n), d1(n);
    for (int i = 0; i < n; ++i) {
        d0(i) = u(rng);
        d1(i) = v(rng);
    }
    rep.diagonalizable_log = check(
        [&](double s) { return Eigen::MatrixXd(pm * (d0 + s * d1).asDiagonal() * pinv); }, lg,
        lg_p, 0.1);

    rep.constant_family = check([&](double) { return p0; }, lg, lg_p, 0.0);
    return rep;
}

}  // namespace chainent
