#ifndef LPNET_ACTIVATION_HPP
#define LPNET_ACTIVATION_HPP

///
/// \file activation.hpp
///
/// Rational activation r(z) = (sum_j alpha_j z^j) / (gamma0 + gamma1 z), the
/// type (d, 1) Pade approximant of a seed phi(z) / (z - z0) with |z0| > 1.
///

#include <functional>
#include <string>

#include "lpnet/numkit.hpp"

namespace lpnet
{

struct SeedFunction
{
    std::function<cplx(cplx)> evaluator;
    cplx z0;
    std::string description;
};

/// phi in {"cos", "one"}; throws ValidationError for other names or |z0| <= 1.
SeedFunction make_seed(const std::string& phi, cplx z0);

struct Activation
{
    CVector alpha; ///< numerator, constant first
    cplx gamma0 = 1.0;
    cplx gamma1 = 0.0;

    /// -gamma0 / gamma1 (infinite when gamma1 = 0).
    cplx pole() const;
    int num_degree() const { return static_cast<int>(alpha.size()) - 1; }
};

Activation build_activation(const SeedFunction& seed, int num_degree, int n_samples = 64);

/// r(z); complex_infinity() at the pole.
cplx eval_activation(const Activation& a, cplx z);

} // namespace lpnet

#endif // LPNET_ACTIVATION_HPP
