#include "lpnet/activation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lpnet/laurent.hpp"

namespace lpnet
{

SeedFunction make_seed(const std::string& phi, cplx z0)
{
    if (!is_finite(z0) || std::abs(z0) <= 1.0)
    {
        throw ValidationError("seed pole z0 must lie outside the unit circle");
    }
    SeedFunction seed;
    seed.z0 = z0;
    if (phi == "cos")
    {
        seed.evaluator = [z0](cplx z) { return std::cos(z) / (z - z0); };
    }
    else if (phi == "one")
    {
        seed.evaluator = [z0](cplx z) { return 1.0 / (z - z0); };
    }
    else
    {
        throw ValidationError("unknown seed function '" + phi + "' (expected cos or one)");
    }
    seed.description = phi;
    return seed;
}

cplx Activation::pole() const
{
    if (gamma1 == cplx(0.0))
    {
        return complex_infinity();
    }
    return -gamma0 / gamma1;
}

Activation build_activation(const SeedFunction& seed, int num_degree, int n_samples)
{
    if (num_degree < 0)
    {
        throw ValidationError("activation numerator degree must be nonnegative");
    }
    if (n_samples < num_degree + 2)
    {
        throw ValidationError("activation needs at least num_degree + 2 = " +
                              std::to_string(num_degree + 2) + " samples per half circle");
    }
    if (!seed.evaluator)
    {
        throw ValidationError("seed function has no evaluator");
    }
    const LaurentWindow w = compute_coefficients(sample_contour(seed.evaluator, 1.0, n_samples));
    CVector c(num_degree + 2);
    for (int k = 0; k <= num_degree + 1; ++k)
    {
        c(k) = w.at(k);
    }

    CMatrix t(1, 2);
    t << c(num_degree + 1), c(num_degree);
    if (std::abs(t(0, 0)) < 1e-14 * c.norm() && std::abs(t(0, 1)) < 1e-14 * c.norm())
    {
        throw NumericalError("seed function degenerate at this degree");
    }
    const numkit::SvdResult s = numkit::svd(t);
    const CVector gamma = numkit::normalize_phase(s.right_vectors.col(1));

    Activation a;
    a.gamma0 = gamma(0);
    a.gamma1 = gamma(1);
    a.alpha.resize(num_degree + 1);
    for (int k = 0; k <= num_degree; ++k)
    {
        a.alpha(k) = c(k) * a.gamma0 + (k >= 1 ? c(k - 1) * a.gamma1 : cplx(0.0));
    }
    return a;
}

cplx eval_activation(const Activation& a, cplx z)
{
    const cplx den = a.gamma0 + a.gamma1 * z;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (std::abs(den) <= 4.0 * eps * (std::abs(a.gamma0) + std::abs(a.gamma1 * z)))
    {
        return complex_infinity();
    }
    const cplx value = numkit::polyval(a.alpha, z) / den;
    return is_finite(value) ? value : complex_infinity();
}

} // namespace lpnet
