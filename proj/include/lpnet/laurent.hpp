#ifndef LPNET_LAURENT_HPP
#define LPNET_LAURENT_HPP

///
/// \file laurent.hpp
///
/// Laurent coefficients of a function from equispaced samples on a circle
/// |z| = rho, computed with a single DFT.
///

#include <functional>

#include "lpnet/numkit.hpp"

namespace lpnet
{

/// Values f(rho exp(2 pi i j / (2n))), j = 0..2n-1.
struct ContourSamples
{
    double rho = 0.99;
    CVector values;

    int n() const { return static_cast<int>(values.size() / 2); }
};

/// Throws ValidationError unless rho > 0, the length is even and >= 2, and
/// every value is finite.
void validate(const ContourSamples& s);

/// Sample f at 2n equispaced points on |z| = rho.
ContourSamples sample_contour(const std::function<cplx(cplx)>& f, double rho, int n);

/// Two-sided coefficient window c_{-n}..c_n.
struct LaurentWindow
{
    int n = 0;
    double rho = 1.0;
    CVector coeffs; ///< coeffs(k + n) = c_k

    /// c_k, or 0 when |k| > n.
    cplx at(int k) const;
};

LaurentWindow compute_coefficients(const ContourSamples& s);

/// Aliasing estimate for every index k = -n..n of the 2n-sample window;
/// entry k + n. s4n must carry twice the samples of s2n on the same circle.
RVector estimate_error(const ContourSamples& s2n, const ContourSamples& s4n);

struct SplitWindows
{
    CVector plus;  ///< (c_0/2, c_1, ..., c_{n1+m1})
    CVector minus; ///< (c_0/2, c_{-1}, ..., c_{-(n1+m1)})
};

SplitWindows split_windows(const LaurentWindow& w, int n1_plus, int m1_plus, int n1_minus,
                           int m1_minus);

} // namespace lpnet

#endif // LPNET_LAURENT_HPP
