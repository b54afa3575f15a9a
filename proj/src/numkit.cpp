#include "lpnet/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace lpnet
{

bool all_finite(const CVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const cplx& z) { return is_finite(z); });
}

bool all_finite(const CMatrix& m)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j)
    {
        for (Eigen::Index i = 0; i < m.rows(); ++i)
        {
            if (!is_finite(m(i, j)))
            {
                return false;
            }
        }
    }
    return true;
}

namespace numkit
{

namespace
{

std::vector<cplx> to_std(const CVector& v)
{
    return std::vector<cplx>(v.begin(), v.end());
}

CVector from_std(const std::vector<cplx>& v)
{
    CVector out(static_cast<Eigen::Index>(v.size()));
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

// Parlett-Reinsch balancing with radix 2 (exact in binary floating point).
void balance(CMatrix& a)
{
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    const Eigen::Index n = a.rows();
    bool done = false;
    while (!done)
    {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i)
        {
            double r = 0.0;
            double c = 0.0;
            for (Eigen::Index j = 0; j < n; ++j)
            {
                if (j != i)
                {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            }
            if (c == 0.0 || r == 0.0)
            {
                continue;
            }
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g)
            {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g)
            {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s)
            {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

} // namespace

CVector fft(const CVector& samples)
{
    if (samples.size() == 0)
    {
        throw ValidationError("empty sample vector");
    }
    if (samples.size() == 1)
    {
        return samples;
    }
    Eigen::FFT<double> engine;
    engine.SetFlag(Eigen::FFT<double>::Unscaled);
    std::vector<cplx> out;
    engine.fwd(out, to_std(samples));
    return from_std(out);
}

CVector ifft(const CVector& spectrum)
{
    if (spectrum.size() == 0)
    {
        throw ValidationError("empty sample vector");
    }
    if (spectrum.size() == 1)
    {
        return spectrum;
    }
    Eigen::FFT<double> engine;
    engine.SetFlag(Eigen::FFT<double>::Unscaled);
    std::vector<cplx> out;
    engine.inv(out, to_std(spectrum));
    return from_std(out);
}

SvdResult svd(const CMatrix& m)
{
    if (m.rows() < 1 || m.cols() < 1)
    {
        throw ValidationError("svd: matrix must have at least one row and one column");
    }
    if (!all_finite(m))
    {
        throw NumericalError("svd: matrix has non-finite entries");
    }
    Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return SvdResult{solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

LeastSquaresResult least_squares(const CMatrix& a, const CVector& b)
{
    if (a.rows() != b.size())
    {
        throw ValidationError("least_squares: matrix has " + std::to_string(a.rows()) +
                              " rows but right-hand side has " + std::to_string(b.size()) +
                              " entries");
    }
    if (a.rows() < a.cols())
    {
        throw ValidationError("least_squares: system is underdetermined");
    }
    if (!all_finite(a) || !all_finite(b))
    {
        throw NumericalError("least_squares: non-finite input");
    }
    LeastSquaresResult out;
    if (a.cols() == 0)
    {
        out.solution = CVector(0);
        out.residual_norm = b.norm();
        return out;
    }
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(a);
    out.solution = cod.solve(b);
    out.rank = cod.rank();
    out.rank_deficient = out.rank < a.cols();
    out.residual_norm = (a * out.solution - b).norm();
    return out;
}

CVector polynomial_roots(const CVector& coeffs)
{
    if (coeffs.size() == 0)
    {
        throw ValidationError("polynomial_roots: empty coefficient vector");
    }
    if (!all_finite(coeffs))
    {
        throw NumericalError("polynomial_roots: non-finite coefficients");
    }
    const Eigen::Index degree = coeffs.size() - 1;
    const cplx lead = coeffs(degree);
    if (std::abs(lead) == 0.0)
    {
        throw NumericalError("degree collapse; trim first");
    }
    if (degree == 0)
    {
        return CVector(0);
    }
    CMatrix companion = CMatrix::Zero(degree, degree);
    for (Eigen::Index i = 1; i < degree; ++i)
    {
        companion(i, i - 1) = 1.0;
    }
    for (Eigen::Index i = 0; i < degree; ++i)
    {
        companion(i, degree - 1) = -coeffs(i) / lead;
    }
    balance(companion);
    Eigen::ComplexEigenSolver<CMatrix> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
    {
        throw NumericalError("polynomial_roots: eigenvalue iteration did not converge");
    }
    return solver.eigenvalues();
}

cplx polyval(const CVector& coeffs, cplx z)
{
    cplx acc = 0.0;
    for (Eigen::Index k = coeffs.size(); k-- > 0;)
    {
        acc = acc * z + coeffs(k);
    }
    return acc;
}

CVector linear_product(const CVector& constant_terms, const CVector& linear_terms)
{
    if (constant_terms.size() != linear_terms.size())
    {
        throw ValidationError("linear_product: factor vectors differ in length");
    }
    CVector out = CVector::Ones(1);
    for (Eigen::Index k = 0; k < constant_terms.size(); ++k)
    {
        CVector next = CVector::Zero(out.size() + 1);
        next.head(out.size()) += constant_terms(k) * out;
        next.tail(out.size()) += linear_terms(k) * out;
        out = std::move(next);
    }
    return out;
}

CVector normalize_phase(const CVector& v)
{
    if (v.size() == 0)
    {
        return v;
    }
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const double mag = std::abs(v(imax));
    if (mag == 0.0)
    {
        return v;
    }
    return v * (mag / v(imax));
}

} // namespace numkit
} // namespace lpnet
