#include "chainent/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "chainent/error.hpp"

namespace chainent {

namespace {

// Eigenvalues of the symmetric tridiagonal matrix with diagonal d and
// off-diagonal e (implicit QL, Wilkinson shift). Sorted ascending on return.
void tridiagonal_eigenvalues(std::vector<double>& d, std::vector<double>& e)
{
    const std::size_t n = d.size();
    e.resize(n, 0.0);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t l = 0; l < n; ++l) {
        for (int iter = 0;; ++iter) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (iter > 60) throw NumericalDegeneracy("tridiagonal eigensolver did not converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::sqrt(g * g + 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool deflated = false;
            for (std::size_t i = m; i-- > l;) {
                const double f = s * e[i], b = c * e[i];
                r = std::sqrt(f * f + g * g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (deflated) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    std::sort(d.begin(), d.end());
}

// Symplectic eigenvalues via B = R J R^T reduced to skew tridiagonal form by
// Householder reflections. Splitting even and odd indices turns the skew
// tridiagonal matrix into [[0, C], [-C^T, 0]] with C lower bidiagonal, so the
// values are the singular values of C, read off the tridiagonal C C^T.
std::vector<double> skew_reduced_values(const Eigen::MatrixXd& gamma)
{
    const Eigen::Index n2 = gamma.rows();
    if (n2 != gamma.cols() || n2 % 2 != 0)
        throw LengthMismatch("covariance must be square with even dimension");
    Eigen::LLT<Eigen::MatrixXd> llt(gamma);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("covariance is not positive definite");
    const Eigen::MatrixXd r = llt.matrixU();
    Eigen::MatrixXd rj(n2, n2);
    for (Eigen::Index k = 0; k < n2 / 2; ++k) {
        rj.col(2 * k) = -r.col(2 * k + 1);
        rj.col(2 * k + 1) = r.col(2 * k);
    }
    Eigen::MatrixXd a = rj * r.triangularView<Eigen::Upper>().transpose();

    // sub[k] = T(k+1, k) of the skew tridiagonal form
    std::vector<double> sub(static_cast<std::size_t>(n2 - 1), 0.0);
    Eigen::VectorXd vbuf(n2), pbuf(n2);
    for (Eigen::Index k = 0; k + 2 < n2; ++k) {
        const Eigen::Index m = n2 - k - 1;
        auto x = a.col(k).tail(m);
        const double alpha = x.norm();
        if (alpha == 0.0) continue;
        const double beta = x(0) > 0.0 ? -alpha : alpha;
        auto v = vbuf.head(m);
        v = x;
        v(0) -= beta;
        const double tau = 2.0 / v.squaredNorm();
        // Only the strictly lower triangle of the trailing block is kept current.
        auto s = a.bottomRightCorner(m, m);
        auto p = pbuf.head(m);
        p.noalias() = s.triangularView<Eigen::StrictlyLower>() * v;
        p.noalias() -= s.triangularView<Eigen::StrictlyLower>().transpose() * v;
        p *= tau;
        // H S H = S + v p^T - p v^T for skew S
        for (Eigen::Index j = 0; j < m; ++j)
            s.col(j).tail(m - j) += v.tail(m - j) * p(j) - p.tail(m - j) * v(j);
        sub[static_cast<std::size_t>(k)] = beta;
    }
    sub.back() = a(n2 - 1, n2 - 2);

    // C(i, i) = sub[2i], C(i, i-1) = sub[2i-1]
    const std::size_t h = static_cast<std::size_t>(n2 / 2);
    std::vector<double> d(h), e(h > 0 ? h - 1 : 0);
    for (std::size_t i = 0; i < h; ++i) {
        const double c_ii = sub[2 * i];
        const double c_im = i > 0 ? sub[2 * i - 1] : 0.0;
        d[i] = c_ii * c_ii + c_im * c_im;
        if (i > 0) e[i - 1] = c_im * sub[2 * i - 2];
    }
    tridiagonal_eigenvalues(d, e);
    for (double& x : d) x = std::sqrt(std::max(0.0, x));
    return d;
}

}  // namespace

SymplecticFactor symplectic_factor(const Eigen::MatrixXd& gamma, bool with_vectors)
{
    const Eigen::Index n2 = gamma.rows();
    if (n2 != gamma.cols() || n2 % 2 != 0)
        throw LengthMismatch("covariance must be square with even dimension");
    Eigen::LLT<Eigen::MatrixXd> llt(gamma);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("covariance is not positive definite");

    SymplecticFactor f;
    f.R = llt.matrixU();
    // R J: column 2r becomes -R(:, 2r+1), column 2r+1 becomes R(:, 2r).
    Eigen::MatrixXd rj(n2, n2);
    for (Eigen::Index r = 0; r < n2 / 2; ++r) {
        rj.col(2 * r) = -f.R.col(2 * r + 1);
        rj.col(2 * r + 1) = f.R.col(2 * r);
    }
    const Eigen::MatrixXd b = rj * f.R.transpose();
    const Eigen::MatrixXd btb = b.transpose() * b;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        btb, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalDegeneracy("eigensolver did not converge");
    f.mu = es.eigenvalues();
    if (with_vectors) f.V = es.eigenvectors();
    return f;
}

std::vector<double> pair_roots(const Eigen::VectorXd& mu)
{
    const Eigen::Index n = mu.size() / 2;
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = mu(2 * i), b = mu(2 * i + 1);
        const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
        if (std::abs(a - b) / scale > kPairGapTolerance) {
            std::ostringstream os;
            os << "unpaired eigenvalues " << a << " and " << b << " of -(J gamma)^2";
            throw NumericalDegeneracy(os.str());
        }
        out[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, 0.5 * (a + b)));
    }
    return out;
}

SymplecticSpectrum symplectic_spectrum(const Eigen::MatrixXd& gamma)
{
    SymplecticSpectrum s;
    s.lambda = skew_reduced_values(gamma);
    for (double& l : s.lambda) {
        if (l < 0.5 - kClampTolerance) {
            std::ostringstream os;
            os << "symplectic eigenvalue " << l << " below 1/2";
            throw SpectrumInGap(os.str());
        }
        if (l < 0.5) l = 0.5;
    }
    return s;
}

SymplecticSpectrum symplectic_spectrum(const BlockToeplitzCorrelation& corr)
{
    return symplectic_spectrum(corr.covariance());
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& spd)
{
    return skew_reduced_values(spd);
}

std::vector<double> symplectic_eigenvalues_reference(const Eigen::MatrixXd& spd)
{
    return pair_roots(symplectic_factor(spd, false).mu);
}

}  // namespace chainent
