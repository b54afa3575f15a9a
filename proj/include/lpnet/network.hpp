#ifndef LPNET_NETWORK_HPP
#define LPNET_NETWORK_HPP

///
/// \file network.hpp
///
/// One component of the shallow network, Phi(z) = W2 r(W1 z - b1) - b2 (plus
/// side) or the same in 1/z (minus side). Hidden parameters come from a
/// factorization of the Pade denominator, the output layer from least squares.
///

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpnet/activation.hpp"
#include "lpnet/pade.hpp"

namespace lpnet
{

enum class Sign
{
    plus,
    minus
};

std::string to_string(Sign s);
Sign sign_from_string(const std::string& s);

/// Rectangle [a, b] + i [c, d] for the random constant terms.
struct Rect
{
    double a = -1.0;
    double b = -0.5;
    double c = 0.5;
    double d = 1.0;
};

void validate(const Rect& r);

struct FactorSet
{
    CVector c0;    ///< C_{k0}
    CVector c1;    ///< C_{k1}
    CVector roots; ///< roots of q, sorted by (modulus, argument)
    Rect rect;
    std::uint64_t seed = 0;
};

/// Uniform double in [0, 1) from the top 53 bits of one mt19937_64 draw.
double unit_uniform(std::uint64_t draw);

/// prod_k (C_{k0} + C_{k1} z) = q(z) with C_{k0}, k < M, drawn from rect.
FactorSet factor_denominator(const CVector& q, const Rect& rect, std::uint64_t seed);

struct HiddenParams
{
    CVector w1;
    CVector b1;
};

HiddenParams hidden_params(const FactorSet& f, const Activation& a);

struct NetworkComponent
{
    Sign sign = Sign::plus;
    Activation activation;
    CVector w1;
    CVector b1;
    CVector w2;
    cplx b2 = 0.0;
    DegreeEstimate degrees;
    FactorSet factors;
    double ls_residual = 0.0;          ///< ||(F|Q)(w2|b2) - P||_2
    double ls_relative_residual = 0.0; ///< ls_residual / ||P||_2
    bool representation_warning = false;
    bool rank_deficient = false;
    bool padded = false; ///< N < M - 1 was padded with zero numerator terms

    int neurons() const { return static_cast<int>(w1.size()); }
};

struct OutputParams
{
    CVector w2;
    cplx b2 = 0.0;
    double residual = 0.0;
    double relative_residual = 0.0;
    bool rank_deficient = false;
};

/// Coefficients A_{k l} of the numerator of r(w_l z - b_l), k = 0..d.
CMatrix numerator_coefficients(const Activation& a, const CVector& w1, const CVector& b1);

/// Least-squares output layer on n_fit_points roots of unity.
OutputParams output_params(const NetworkComponent& comp, int n_fit_points);

/// Full assembly: factor q, hidden layer, output layer.
NetworkComponent build_component(Sign sign, const DegreeEstimate& degrees,
                                 const Activation& activation, const Rect& rect,
                                 std::uint64_t seed, int n_fit_points);

/// Numerator degree the activation must have for these degrees, max(N, M-1) + 1 - M.
int activation_degree(const DegreeEstimate& d);

cplx eval_component(const NetworkComponent& comp, cplx z);

/// p(z) / q(z) for the plus side, p(1/z) / q(1/z) for the minus side.
cplx eval_pade(const NetworkComponent& comp, cplx z);

cplx eval_network(const NetworkComponent* plus, const NetworkComponent* minus, cplx z);

struct PoleEstimate
{
    cplx location;
    int neuron_index = 0;
    Sign component_sign = Sign::plus;
    bool at_infinity = false;
};

std::vector<PoleEstimate> recover_poles(const NetworkComponent& comp);

struct PoleCluster
{
    cplx location;
    int multiplicity = 0;
    std::vector<int> members; ///< indices into the estimates passed in
};

/// Single-linkage grouping; clusters ordered by (modulus, argument) of the centroid.
std::vector<PoleCluster> cluster_poles(const std::vector<PoleEstimate>& estimates, double radius);

/// Throws ValidationError when stored fields break the component invariants.
void validate(const NetworkComponent& comp);

} // namespace lpnet

#endif // LPNET_NETWORK_HPP
