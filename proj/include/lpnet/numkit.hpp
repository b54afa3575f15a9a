#ifndef LPNET_NUMKIT_HPP
#define LPNET_NUMKIT_HPP

///
/// \file numkit.hpp
///
/// Dense complex kernels shared by the rest of the library: FFT, SVD, least
/// squares, polynomial roots and Horner evaluation. Everything here is a pure
/// function of its arguments.
///

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lpnet
{

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: wrong sizes, out-of-range parameters, malformed files.
class ValidationError : public Error
{
public:
    using Error::Error;
};

/// The numbers themselves went wrong (non-finite data, degenerate systems).
class NumericalError : public Error
{
public:
    using Error::Error;
};

/// Marker returned by evaluators at a pole.
inline cplx complex_infinity()
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
}

inline bool is_complex_infinity(const cplx& z)
{
    return std::isinf(z.real()) || std::isinf(z.imag());
}

inline bool is_finite(const cplx& z)
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

bool all_finite(const CVector& v);
bool all_finite(const CMatrix& m);

namespace numkit
{

/// Unnormalized forward DFT, X_k = sum_j x_j exp(-2 pi i j k / n). Any n >= 1.
CVector fft(const CVector& samples);

/// Unnormalized inverse DFT (positive exponent). ifft(fft(x)) = n x.
CVector ifft(const CVector& spectrum);

struct SvdResult
{
    RVector singular_values; ///< nonincreasing, length min(rows, cols)
    CMatrix left_vectors;    ///< rows x rows, unitary
    CMatrix right_vectors;   ///< cols x cols, unitary
};

/// Full SVD, m = U diag(sigma) V^*. No truncation is applied.
SvdResult svd(const CMatrix& m);

struct LeastSquaresResult
{
    CVector solution;
    double residual_norm = 0.0; ///< ||a x - b||_2 at the returned solution
    bool rank_deficient = false;
    Eigen::Index rank = 0;
};

/// Minimizer of ||a x - b||_2 (minimum-norm one when a is rank deficient).
LeastSquaresResult least_squares(const CMatrix& a, const CVector& b);

/// All roots of sum_k coeffs_k z^k, computed as eigenvalues of the balanced
/// companion matrix. Coefficients are constant-first.
CVector polynomial_roots(const CVector& coeffs);

/// Horner evaluation of sum_k coeffs_k z^k (constant-first).
cplx polyval(const CVector& coeffs, cplx z);

/// Coefficients of prod_k (a_k + b_k z), constant-first.
CVector linear_product(const CVector& constant_terms, const CVector& linear_terms);

/// Scale v by a unit-modulus factor so its largest-magnitude entry is real
/// and positive. Zero vectors are returned unchanged.
CVector normalize_phase(const CVector& v);

} // namespace numkit
} // namespace lpnet

#endif // LPNET_NUMKIT_HPP
