#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpnet/network.hpp"
#include "test_helpers.hpp"

using namespace lpnet;
using namespace testkit;

namespace
{

DegreeEstimate exact_degrees(const CVector& p, const CVector& q)
{
    DegreeEstimate d;
    d.p = p;
    d.q = q;
    d.n_deg = static_cast<int>(p.size()) - 1;
    d.m_deg = static_cast<int>(q.size()) - 1;
    return d;
}

CVector from_roots(const std::vector<cplx>& roots)
{
    CVector c0 = CVector::Ones(static_cast<Eigen::Index>(roots.size()));
    CVector c1(static_cast<Eigen::Index>(roots.size()));
    for (std::size_t i = 0; i < roots.size(); ++i)
    {
        c1(static_cast<Eigen::Index>(i)) = -1.0 / roots[i];
    }
    return numkit::linear_product(c0, c1);
}

NetworkComponent component_for(Sign sign, const CVector& p, const CVector& q,
                               std::uint64_t seed = 7, cplx z0 = -1.2)
{
    const DegreeEstimate d = exact_degrees(p, q);
    const Activation a = build_activation(make_seed("cos", z0), activation_degree(d), 64);
    return build_component(sign, d, a, Rect{}, seed, 64);
}

CVector vec(std::initializer_list<cplx> v)
{
    CVector out(static_cast<Eigen::Index>(v.size()));
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

} // namespace

TEST_CASE("factor of a single linear term is forced")
{
    const FactorSet f = factor_denominator(vec({1.0, -0.5}), Rect{}, 99);
    REQUIRE(f.c0.size() == 1);
    CHECK(std::abs(f.c0(0) - 1.0) < 1e-15);
    CHECK(std::abs(f.roots(0) - 2.0) < 1e-14);
    CHECK(std::abs(f.c1(0) + 0.5) < 1e-15);
}

TEST_CASE("factor of 1 - z^2 re-expands")
{
    const CVector q = vec({1.0, 0.0, -1.0});
    for (std::uint64_t seed : {0u, 1u, 12345u})
    {
        const FactorSet f = factor_denominator(q, Rect{}, seed);
        CHECK((numkit::linear_product(f.c0, f.c1) - q).norm() < 1e-12);
    }
}

TEST_CASE("factor invariants at the 40-pole sizes")
{
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> radius(0.5, 2.0);
    std::uniform_real_distribution<double> angle(-3.1, 3.1);
    for (int m : {10, 30})
    {
        std::vector<cplx> roots;
        for (int i = 0; i < m; ++i)
        {
            roots.push_back(std::polar(radius(gen), angle(gen)));
        }
        const CVector q = from_roots(roots) * cplx(0.3, 0.4);
        const Rect rect{-1.0, -0.5, 0.5, 1.0};
        const FactorSet f = factor_denominator(q, rect, 42);
        CHECK((numkit::linear_product(f.c0, f.c1) - q).norm() <= 1e-10 * q.norm());
        CHECK(std::abs(f.c0.prod() - q(0)) <= 1e-10 * std::abs(q(0)));
        for (int k = 0; k < m; ++k)
        {
            CHECK(std::abs(f.c1(k)) > 0.0);
        }
        for (int k = 0; k + 1 < m; ++k)
        {
            CHECK(f.c0(k).real() >= rect.a);
            CHECK(f.c0(k).real() <= rect.b);
            CHECK(f.c0(k).imag() >= rect.c);
            CHECK(f.c0(k).imag() <= rect.d);
        }
        for (int k = 1; k < m; ++k)
        {
            CHECK(std::abs(f.roots(k - 1)) <= std::abs(f.roots(k)));
        }
    }
}

TEST_CASE("factor input checks")
{
    CHECK_THROWS_AS(factor_denominator(vec({0.0, 1.0}), Rect{}, 0), ValidationError);
    CHECK_THROWS_AS(factor_denominator(vec({1.0, 1.0}), Rect{0.0, -1.0, 0.0, 1.0}, 0),
                    ValidationError);
    CHECK(factor_denominator(vec({2.0}), Rect{}, 0).c0.size() == 0);
}

TEST_CASE("uniform draws use the top 53 bits")
{
    CHECK(unit_uniform(0) == 0.0);
    CHECK(unit_uniform(~std::uint64_t{0}) < 1.0);
    CHECK(unit_uniform(std::uint64_t{1} << 63) == 0.5);
}

TEST_CASE("hidden layer from the worked example")
{
    FactorSet f;
    f.c0 = vec({1.0});
    f.c1 = vec({-0.5});
    Activation a;
    a.alpha = vec({1.0, 1.0});
    a.gamma0 = 1.2;
    a.gamma1 = 1.0;
    const HiddenParams h = hidden_params(f, a);
    CHECK(std::abs(h.w1(0) + 0.5) < 1e-15);
    CHECK(std::abs(h.b1(0) - 0.2) < 1e-15);

    a.gamma0 = 0.0;
    CHECK(hidden_params(f, a).b1(0) == -f.c0(0));

    a.gamma1 = 0.0;
    CHECK_THROWS_WITH_AS(hidden_params(f, a),
                         "activation has no pole; unsafe-PAU construction requires one",
                         ValidationError);
}

TEST_CASE("worked example pole recovery")
{
    NetworkComponent comp;
    comp.sign = Sign::plus;
    comp.activation.alpha = vec({1.0});
    comp.activation.gamma0 = 1.2;
    comp.activation.gamma1 = 1.0;
    comp.w1 = vec({-0.5});
    comp.b1 = vec({0.2});
    comp.w2 = vec({1.0});
    const std::vector<PoleEstimate> poles = recover_poles(comp);
    REQUIRE(poles.size() == 1);
    CHECK(std::abs(poles[0].location - 2.0) < 1e-15);
}

TEST_CASE("constant function gives zero output weights")
{
    const CVector q = vec({1.0, -0.5});
    const NetworkComponent comp = component_for(Sign::plus, 3.0 * q, q);
    CHECK(std::abs(comp.w2(0)) < 1e-12);
    CHECK(std::abs(comp.b2 + 3.0) < 1e-12);
    CHECK(comp.ls_residual <= 1e-12);
}

TEST_CASE("component for 1/(z - 2)")
{
    const NetworkComponent comp = component_for(Sign::plus, vec({-0.5}), vec({1.0, -0.5}));
    CHECK(comp.neurons() == 1);
    CHECK(comp.activation.num_degree() == 0);
    for (int i = 0; i < 16; ++i)
    {
        const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * i / 16.0);
        CHECK(std::abs(eval_component(comp, z) - 1.0 / (z - 2.0)) < 1e-10);
    }
    CHECK(std::abs(eval_component(comp, 0.0) + 0.5) < 1e-10);
    CHECK(std::abs(recover_poles(comp)[0].location - 2.0) < 1e-12);
    CHECK_FALSE(comp.representation_warning);
}

TEST_CASE("output bias only")
{
    NetworkComponent comp = component_for(Sign::plus, vec({-0.5}), vec({1.0, -0.5}));
    comp.w2.setZero();
    comp.b2 = cplx(2.0, 1.0);
    CHECK(eval_component(comp, cplx(0.3, 0.1)) == -cplx(2.0, 1.0));
    CHECK(eval_component(comp, cplx(-4.0, 9.0)) == -cplx(2.0, 1.0));
}

TEST_CASE("minus component evaluates in 1/z")
{
    // f(z) = 1/(z - 0.5) = (1/z) / (1 - 0.5/z) as a function of w = 1/z: w / (1 - w/2).
    const NetworkComponent comp = component_for(Sign::minus, vec({0.0, 1.0}), vec({1.0, -0.5}));
    for (int i = 0; i < 16; ++i)
    {
        const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * i / 16.0 + 0.1);
        CHECK(std::abs(eval_component(comp, z) - 1.0 / (z - 0.5)) < 1e-10);
    }
    CHECK_THROWS_AS(eval_component(comp, 0.0), ValidationError);
    CHECK(std::abs(recover_poles(comp)[0].location - 0.5) < 1e-12);
}

TEST_CASE("network sums its components")
{
    const NetworkComponent plus = component_for(Sign::plus, vec({-0.5}), vec({1.0, -0.5}));
    const cplx z(0.2, 0.7);
    CHECK(eval_network(&plus, nullptr, z) == eval_component(plus, z));
    CHECK_THROWS_AS(eval_network(nullptr, nullptr, z), ValidationError);
}

TEST_CASE("evaluation at a neuron pole is infinite")
{
    const NetworkComponent comp = component_for(Sign::plus, vec({-0.5}), vec({1.0, -0.5}));
    CHECK(is_complex_infinity(eval_component(comp, recover_poles(comp)[0].location)));
}

TEST_CASE("recovered poles are the roots of q for any seed and activation")
{
    const std::vector<cplx> roots = {cplx(1.5, 0.2), cplx(-1.2, 1.1), cplx(0.3, -2.0),
                                     cplx(2.2, 0.0)};
    const CVector q = from_roots(roots);
    const CVector p = vec({1.0, cplx(0.2, 0.1), cplx(-0.3, 0.0), cplx(0.05, 0.5)});
    std::vector<std::vector<cplx>> pole_sets;
    std::vector<CVector> weights;
    for (auto [seed, z0] : {std::pair<std::uint64_t, cplx>{1, cplx(-1.2, 0.0)},
                            std::pair<std::uint64_t, cplx>{2, cplx(-1.2, 0.0)},
                            std::pair<std::uint64_t, cplx>{1, cplx(1.43, -0.2)}})
    {
        const NetworkComponent comp = component_for(Sign::plus, p, q, seed, z0);
        std::vector<cplx> poles;
        for (const PoleEstimate& e : recover_poles(comp))
        {
            const int l = e.neuron_index;
            CHECK(std::abs(e.location + comp.factors.c0(l) / comp.factors.c1(l)) <=
                  1e-12 * std::abs(e.location));
            poles.push_back(e.location);
        }
        pole_sets.push_back(poles);
        weights.push_back(comp.w1);
    }
    CHECK((weights[0] - weights[1]).norm() > 1e-3);
    for (const auto& set : pole_sets)
    {
        CHECK(multiset_distance(set, roots) < 1e-10);
        CHECK(multiset_distance(set, pole_sets[0]) < 1e-10);
    }
}

TEST_CASE("minus side recovered poles are reciprocal roots")
{
    const CVector q = from_roots({cplx(1.6, 0.3), cplx(-2.0, 0.5)});
    const NetworkComponent comp = component_for(Sign::minus, vec({0.0, 1.0, 0.4}), q);
    for (const PoleEstimate& e : recover_poles(comp))
    {
        const int l = e.neuron_index;
        CHECK(std::abs(e.location + comp.factors.c1(l) / comp.factors.c0(l)) <=
              1e-12 * std::abs(e.location));
    }
}

TEST_CASE("network reproduces p/q when the fit is exact")
{
    std::mt19937_64 gen(123);
    std::uniform_real_distribution<double> radius(1.3, 3.0);
    std::uniform_real_distribution<double> angle(-3.1, 3.1);
    std::uniform_real_distribution<double> ring(0.9, 1.1);
    for (int trial = 0; trial < 10; ++trial)
    {
        const int m = 1 + trial % 4;
        std::vector<cplx> roots;
        for (int i = 0; i < m; ++i)
        {
            roots.push_back(std::polar(radius(gen), angle(gen)));
        }
        const CVector q = from_roots(roots);
        const CVector p = random_vector(gen, m + 1);
        for (Sign sign : {Sign::plus, Sign::minus})
        {
            const NetworkComponent comp = component_for(sign, p, q, trial);
            REQUIRE(comp.ls_residual <= 1e-10 * p.norm() * 8.0);
            for (int i = 0; i < 64; ++i)
            {
                const cplx z = std::polar(ring(gen), angle(gen));
                const cplx ref = eval_pade(comp, z);
                CHECK(std::abs(eval_component(comp, z) - ref) <= 1e-8 * (1.0 + std::abs(ref)));
            }
            CHECK_NOTHROW(validate(comp));
        }
    }
}

TEST_CASE("numerator degree above M - 1 leaves an inconsistent output layer")
{
    // e^z/(z - 1.5) truncated to type (4, 1): the residual is recorded and flagged.
    CVector c(7);
    for (int k = 0; k < 7; ++k)
    {
        c(k) = 0.0;
        double f = 1.0;
        for (int j = 0; j <= k; ++j)
        {
            if (j > 0)
            {
                f *= j;
            }
            c(k) += (1.0 / f) * (-1.0 / std::pow(1.5, k - j + 1));
        }
    }
    const DegreeEstimate d = estimate_degrees(c, 4, 1, 1e-14);
    REQUIRE(d.m_deg == 1);
    const Activation a = build_activation(make_seed("cos", -1.2), activation_degree(d), 64);
    const NetworkComponent comp = build_component(Sign::plus, d, a, Rect{}, 0, 64);
    CHECK(comp.representation_warning);
    CHECK(comp.ls_relative_residual > 1e-6);
    CHECK(std::abs(recover_poles(comp)[0].location - 1.5) < 5e-2);
}

TEST_CASE("short numerators are padded")
{
    const CVector q = from_roots({cplx(1.5, 0.0), cplx(-1.7, 0.4), cplx(0.2, 2.0)});
    const DegreeEstimate d = exact_degrees(vec({1.0}), q);
    CHECK(activation_degree(d) == 0);
    const Activation a = build_activation(make_seed("cos", -1.2), 0, 64);
    const NetworkComponent comp = build_component(Sign::plus, d, a, Rect{}, 0, 64);
    CHECK(comp.padded);
    CHECK(comp.degrees.n_deg == 2);
    CHECK(comp.ls_relative_residual < 1e-12);
}

TEST_CASE("activation degree must match")
{
    const DegreeEstimate d = exact_degrees(vec({1.0, 2.0}), vec({1.0, -0.5}));
    const Activation a = build_activation(make_seed("cos", -1.2), 0, 64);
    CHECK_THROWS_AS(build_component(Sign::plus, d, a, Rect{}, 0, 64), ValidationError);
}

TEST_CASE("clustering")
{
    std::vector<PoleEstimate> est(2);
    est[0].location = cplx(0.0, 0.8);
    est[1].location = cplx(0.0, 0.8 + 1e-9);
    const auto one = cluster_poles(est, 1e-6);
    REQUIRE(one.size() == 1);
    CHECK(one[0].multiplicity == 2);
    CHECK(std::abs(one[0].location - cplx(0.0, 0.8)) < 1e-9);
    CHECK(cluster_poles({}, 1e-6).empty());
    CHECK(cluster_poles(est, 1e-12).size() == 2);
    CHECK_THROWS_AS(cluster_poles(est, 0.0), ValidationError);
}

TEST_CASE("clustering chains through neighbours")
{
    std::vector<PoleEstimate> est(3);
    est[0].location = 1.0;
    est[1].location = 1.0 + 0.8e-6;
    est[2].location = 1.0 + 1.6e-6;
    const auto groups = cluster_poles(est, 1e-6);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].multiplicity == 3);
}

TEST_CASE("cluster members point back at the estimates")
{
    std::vector<PoleEstimate> est(4);
    est[0].location = 2.0;
    est[1].location = cplx(0.0, 0.5);
    est[2].at_infinity = true;
    est[2].location = complex_infinity();
    est[3].location = 2.0 + 1e-9;
    const auto groups = cluster_poles(est, 1e-6);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0].members == std::vector<int>{1});
    CHECK(groups[1].members == std::vector<int>{0, 3});
}

TEST_CASE("minus side neuron with a pole at infinity is flagged")
{
    NetworkComponent comp;
    comp.sign = Sign::minus;
    comp.activation.alpha = vec({1.0});
    comp.activation.gamma0 = 1.2;
    comp.activation.gamma1 = 1.0;
    comp.w1 = vec({1.0});
    comp.b1 = vec({1.2});
    comp.w2 = vec({1.0});
    const auto poles = recover_poles(comp);
    CHECK(poles[0].at_infinity);
    CHECK(cluster_poles(poles, 1e-6).empty());
}

TEST_CASE("validation catches tampered weights")
{
    NetworkComponent comp = component_for(Sign::plus, vec({-0.5}), vec({1.0, -0.5}));
    CHECK_NOTHROW(validate(comp));
    comp.w1(0) += 1e-9;
    CHECK_THROWS_WITH_AS(validate(comp), doctest::Contains("w1"), ValidationError);
}

TEST_CASE("sign names")
{
    CHECK(sign_from_string("+") == Sign::plus);
    CHECK(sign_from_string("minus") == Sign::minus);
    CHECK(to_string(Sign::minus) == "-");
    CHECK_THROWS_AS(sign_from_string("?"), ValidationError);
}
