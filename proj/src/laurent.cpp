#include "lpnet/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lpnet
{

void validate(const ContourSamples& s)
{
    if (!(s.rho > 0.0) || !std::isfinite(s.rho))
    {
        throw ValidationError("rho must be positive and finite");
    }
    if (s.values.size() < 2 || s.values.size() % 2 != 0)
    {
        throw ValidationError("sample count must be even and at least 2, got " +
                              std::to_string(s.values.size()));
    }
    if (!all_finite(s.values))
    {
        throw ValidationError("samples contain non-finite values (is f analytic on the contour?)");
    }
}

ContourSamples sample_contour(const std::function<cplx(cplx)>& f, double rho, int n)
{
    if (n < 1)
    {
        throw ValidationError("n must be at least 1");
    }
    ContourSamples s;
    s.rho = rho;
    s.values.resize(2 * n);
    for (int j = 0; j < 2 * n; ++j)
    {
        const double theta = std::numbers::pi * j / n;
        s.values(j) = f(std::polar(rho, theta));
    }
    return s;
}

cplx LaurentWindow::at(int k) const
{
    if (k < -n || k > n)
    {
        return 0.0;
    }
    return coeffs(k + n);
}

LaurentWindow compute_coefficients(const ContourSamples& s)
{
    validate(s);
    const int n = s.n();
    const CVector spectrum = numkit::fft(s.values);
    LaurentWindow w;
    w.n = n;
    w.rho = s.rho;
    w.coeffs.resize(2 * n + 1);
    for (int k = -n; k <= n; ++k)
    {
        const int idx = k >= 0 ? k : 2 * n + k;
        w.coeffs(k + n) = std::pow(s.rho, -k) / (2.0 * n) * spectrum(idx);
    }
    return w;
}

RVector estimate_error(const ContourSamples& s2n, const ContourSamples& s4n)
{
    validate(s2n);
    validate(s4n);
    if (s2n.rho != s4n.rho)
    {
        throw ValidationError("error estimate needs both sample sets on the same radius");
    }
    if (s4n.values.size() != 2 * s2n.values.size())
    {
        throw ValidationError("error estimate needs exactly twice the samples (" +
                              std::to_string(2 * s2n.values.size()) + "), got " +
                              std::to_string(s4n.values.size()));
    }
    const int n = s2n.n();
    const CVector spectrum = numkit::fft(s4n.values);
    RVector out(2 * n + 1);
    for (int k = -n; k <= n; ++k)
    {
        out(k + n) = std::pow(s2n.rho, -k) / (2.0 * n) * std::abs(spectrum(k + 2 * n));
    }
    return out;
}

SplitWindows split_windows(const LaurentWindow& w, int n1_plus, int m1_plus, int n1_minus,
                           int m1_minus)
{
    if (n1_plus < 0 || m1_plus < 0 || n1_minus < 0 || m1_minus < 0)
    {
        throw ValidationError("degree bounds must be nonnegative");
    }
    const int len_plus = n1_plus + m1_plus;
    const int len_minus = n1_minus + m1_minus;
    const int need = std::max(len_plus, len_minus);
    if (need > w.n)
    {
        throw ValidationError("coefficient window too small: n = " + std::to_string(w.n) +
                              " but N1 + M1 = " + std::to_string(need) + " (short by " +
                              std::to_string(need - w.n) + ")");
    }
    SplitWindows out;
    out.plus.resize(len_plus + 1);
    out.minus.resize(len_minus + 1);
    out.plus(0) = w.at(0) / 2.0;
    out.minus(0) = w.at(0) / 2.0;
    for (int k = 1; k <= len_plus; ++k)
    {
        out.plus(k) = w.at(k);
    }
    for (int k = 1; k <= len_minus; ++k)
    {
        out.minus(k) = w.at(-k);
    }
    return out;
}

} // namespace lpnet
