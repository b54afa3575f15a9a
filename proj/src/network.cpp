#include "lpnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace lpnet
{

namespace
{

bool modulus_then_argument(const cplx& x, const cplx& y)
{
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ax != ay)
    {
        return ax < ay;
    }
    return std::arg(x) < std::arg(y);
}

double binomial(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
    {
        r = r * (n - k + i) / i;
    }
    return std::round(r);
}

cplx argument_of(const NetworkComponent& comp, cplx z)
{
    if (comp.sign == Sign::plus)
    {
        return z;
    }
    if (z == cplx(0.0))
    {
        throw ValidationError("minus component cannot be evaluated at z = 0");
    }
    return 1.0 / z;
}

void require_length(const CVector& v, Eigen::Index len, const std::string& field)
{
    if (v.size() != len)
    {
        throw ValidationError(field + ": expected length " + std::to_string(len) + ", got " +
                              std::to_string(v.size()));
    }
    if (!all_finite(v))
    {
        throw ValidationError(field + ": non-finite entry");
    }
}

} // namespace

std::string to_string(Sign s)
{
    return s == Sign::plus ? "+" : "-";
}

Sign sign_from_string(const std::string& s)
{
    if (s == "+" || s == "plus")
    {
        return Sign::plus;
    }
    if (s == "-" || s == "minus")
    {
        return Sign::minus;
    }
    throw ValidationError("sign: expected \"+\" or \"-\", got \"" + s + "\"");
}

void validate(const Rect& r)
{
    if (!(r.a < r.b) || !(r.c < r.d) || !std::isfinite(r.a) || !std::isfinite(r.b) ||
        !std::isfinite(r.c) || !std::isfinite(r.d))
    {
        throw ValidationError("rectangle needs a < b and c < d");
    }
}

double unit_uniform(std::uint64_t draw)
{
    return static_cast<double>(draw >> 11) * 0x1.0p-53;
}

FactorSet factor_denominator(const CVector& q, const Rect& rect, std::uint64_t seed)
{
    validate(rect);
    if (q.size() == 0)
    {
        throw ValidationError("denominator has no coefficients");
    }
    const int m = static_cast<int>(q.size()) - 1;
    FactorSet f;
    f.rect = rect;
    f.seed = seed;
    f.c0.resize(m);
    f.c1.resize(m);
    if (m == 0)
    {
        f.roots.resize(0);
        return f;
    }
    if (std::abs(q(0)) == 0.0 || std::abs(q(m)) == 0.0)
    {
        throw ValidationError("denominator must have nonzero constant and leading terms");
    }
    CVector roots = numkit::polynomial_roots(q);
    std::sort(roots.begin(), roots.end(), modulus_then_argument);
    for (const cplx& r : roots)
    {
        if (std::abs(r) <= 1e-13)
        {
            throw NumericalError("denominator has a root at the origin");
        }
    }
    f.roots = roots;

    std::mt19937_64 gen(seed);
    cplx prod = 1.0;
    for (int k = 0; k < m - 1; ++k)
    {
        cplx draw = 0.0;
        while (draw == cplx(0.0))
        {
            const double re = rect.a + (rect.b - rect.a) * unit_uniform(gen());
            const double im = rect.c + (rect.d - rect.c) * unit_uniform(gen());
            draw = {re, im};
        }
        f.c0(k) = draw;
        prod *= draw;
    }
    f.c0(m - 1) = q(0) / prod;
    for (int k = 0; k < m; ++k)
    {
        f.c1(k) = -f.c0(k) / roots(k);
    }
    return f;
}

HiddenParams hidden_params(const FactorSet& f, const Activation& a)
{
    if (a.gamma1 == cplx(0.0))
    {
        throw ValidationError("activation has no pole; unsafe-PAU construction requires one");
    }
    HiddenParams h;
    h.w1 = f.c1 / a.gamma1;
    h.b1 = (a.gamma0 - f.c0.array()).matrix() / a.gamma1;
    return h;
}

CMatrix numerator_coefficients(const Activation& a, const CVector& w1, const CVector& b1)
{
    const int d = a.num_degree();
    const Eigen::Index m = w1.size();
    CMatrix coeffs = CMatrix::Zero(d + 1, m);
    for (Eigen::Index l = 0; l < m; ++l)
    {
        for (int k = 0; k <= d; ++k)
        {
            cplx acc = 0.0;
            for (int j = k; j <= d; ++j)
            {
                acc += a.alpha(j) * binomial(j, k) * std::pow(-b1(l), j - k);
            }
            coeffs(k, l) = acc * std::pow(w1(l), k);
        }
    }
    return coeffs;
}

OutputParams output_params(const NetworkComponent& comp, int n_fit_points)
{
    const int m = comp.neurons();
    if (n_fit_points < m + 1)
    {
        throw ValidationError("need at least M + 1 = " + std::to_string(m + 1) + " fit points");
    }
    if (comp.b1.size() != m || comp.factors.c0.size() != m || comp.factors.c1.size() != m)
    {
        throw ValidationError("hidden layer incomplete");
    }
    const CMatrix a = numerator_coefficients(comp.activation, comp.w1, comp.b1);
    const CVector& p = comp.degrees.p;
    const CVector& q = comp.degrees.q;

    CMatrix system(n_fit_points, m + 1);
    CVector rhs(n_fit_points);
    CVector factor(m);
    for (int row = 0; row < n_fit_points; ++row)
    {
        const cplx node = std::polar(1.0, 2.0 * std::numbers::pi * row / n_fit_points);
        const cplx x = comp.sign == Sign::plus ? node : 1.0 / node;
        for (int i = 0; i < m; ++i)
        {
            factor(i) = comp.factors.c0(i) + comp.factors.c1(i) * x;
        }
        for (int l = 0; l < m; ++l)
        {
            cplx value = numkit::polyval(a.col(l), x);
            for (int i = 0; i < m; ++i)
            {
                if (i != l)
                {
                    value *= factor(i);
                }
            }
            system(row, l) = value;
        }
        system(row, m) = -numkit::polyval(q, x);
        rhs(row) = numkit::polyval(p, x);
    }

    const numkit::LeastSquaresResult ls = numkit::least_squares(system, rhs);
    OutputParams out;
    out.w2 = ls.solution.head(m);
    out.b2 = ls.solution(m);
    out.residual = ls.residual_norm;
    const double scale = rhs.norm();
    out.relative_residual = scale > 0.0 ? ls.residual_norm / scale : ls.residual_norm;
    out.rank_deficient = ls.rank_deficient;
    return out;
}

int activation_degree(const DegreeEstimate& d)
{
    return std::max(d.n_deg, d.m_deg - 1) + 1 - d.m_deg;
}

NetworkComponent build_component(Sign sign, const DegreeEstimate& degrees,
                                 const Activation& activation, const Rect& rect,
                                 std::uint64_t seed, int n_fit_points)
{
    if (degrees.m_deg < 1)
    {
        throw ValidationError("component needs at least one neuron (M >= 1)");
    }
    if (activation.num_degree() != activation_degree(degrees))
    {
        throw ValidationError("activation numerator degree " +
                              std::to_string(activation.num_degree()) + " does not match N + 1 - M = " +
                              std::to_string(activation_degree(degrees)));
    }
    NetworkComponent comp;
    comp.sign = sign;
    comp.activation = activation;
    comp.degrees = degrees;
    if (degrees.n_deg < degrees.m_deg - 1)
    {
        const int n_eff = degrees.m_deg - 1;
        CVector padded = CVector::Zero(n_eff + 1);
        padded.head(degrees.p.size()) = degrees.p;
        comp.degrees.p = padded;
        comp.degrees.n_deg = n_eff;
        comp.padded = true;
    }
    comp.factors = factor_denominator(comp.degrees.q, rect, seed);
    const HiddenParams h = hidden_params(comp.factors, activation);
    comp.w1 = h.w1;
    comp.b1 = h.b1;
    const OutputParams o = output_params(comp, n_fit_points);
    comp.w2 = o.w2;
    comp.b2 = o.b2;
    comp.ls_residual = o.residual;
    comp.ls_relative_residual = o.relative_residual;
    comp.rank_deficient = o.rank_deficient;
    comp.representation_warning = o.relative_residual > 1e-6;
    return comp;
}

cplx eval_component(const NetworkComponent& comp, cplx z)
{
    const cplx x = argument_of(comp, z);
    cplx acc = -comp.b2;
    for (int l = 0; l < comp.neurons(); ++l)
    {
        if (comp.w2(l) == cplx(0.0))
        {
            continue;
        }
        const cplx r = eval_activation(comp.activation, comp.w1(l) * x - comp.b1(l));
        if (is_complex_infinity(r))
        {
            return complex_infinity();
        }
        acc += comp.w2(l) * r;
    }
    return acc;
}

cplx eval_pade(const NetworkComponent& comp, cplx z)
{
    const cplx x = argument_of(comp, z);
    const cplx den = numkit::polyval(comp.degrees.q, x);
    if (den == cplx(0.0))
    {
        return complex_infinity();
    }
    return numkit::polyval(comp.degrees.p, x) / den;
}

cplx eval_network(const NetworkComponent* plus, const NetworkComponent* minus, cplx z)
{
    if (plus == nullptr && minus == nullptr)
    {
        throw ValidationError("network has no components");
    }
    cplx acc = 0.0;
    for (const NetworkComponent* comp : {plus, minus})
    {
        if (comp != nullptr)
        {
            const cplx v = eval_component(*comp, z);
            if (is_complex_infinity(v))
            {
                return complex_infinity();
            }
            acc += v;
        }
    }
    return acc;
}

std::vector<PoleEstimate> recover_poles(const NetworkComponent& comp)
{
    const cplx z0 = comp.activation.pole();
    std::vector<PoleEstimate> out;
    out.reserve(comp.neurons());
    for (int l = 0; l < comp.neurons(); ++l)
    {
        PoleEstimate e;
        e.neuron_index = l;
        e.component_sign = comp.sign;
        const cplx shifted = comp.b1(l) + z0;
        if (comp.sign == Sign::plus)
        {
            e.location = shifted / comp.w1(l);
        }
        else if (std::abs(shifted) <= 1e-13)
        {
            e.location = complex_infinity();
            e.at_infinity = true;
        }
        else
        {
            e.location = comp.w1(l) / shifted;
        }
        out.push_back(e);
    }
    return out;
}

std::vector<PoleCluster> cluster_poles(const std::vector<PoleEstimate>& estimates, double radius)
{
    if (!(radius > 0.0))
    {
        throw ValidationError("cluster radius must be positive");
    }
    std::vector<cplx> points;
    std::vector<int> source;
    for (std::size_t i = 0; i < estimates.size(); ++i)
    {
        const PoleEstimate& e = estimates[i];
        if (!e.at_infinity && is_finite(e.location))
        {
            points.push_back(e.location);
            source.push_back(static_cast<int>(i));
        }
    }
    std::vector<std::size_t> parent(points.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t i) {
        while (parent[i] != i)
        {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        for (std::size_t j = i + 1; j < points.size(); ++j)
        {
            if (std::abs(points[i] - points[j]) <= radius)
            {
                parent[find(i)] = find(j);
            }
        }
    }
    std::vector<PoleCluster> clusters;
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        const std::size_t r = find(i);
        auto it = std::find(roots.begin(), roots.end(), r);
        std::size_t slot = static_cast<std::size_t>(it - roots.begin());
        if (it == roots.end())
        {
            roots.push_back(r);
            clusters.push_back({0.0, 0, {}});
        }
        clusters[slot].location += points[i];
        ++clusters[slot].multiplicity;
        clusters[slot].members.push_back(source[i]);
    }
    for (PoleCluster& c : clusters)
    {
        c.location /= static_cast<double>(c.multiplicity);
    }
    std::sort(clusters.begin(), clusters.end(), [](const PoleCluster& x, const PoleCluster& y) {
        return modulus_then_argument(x.location, y.location);
    });
    return clusters;
}

void validate(const NetworkComponent& comp)
{
    const int m = comp.degrees.m_deg;
    const int n = comp.degrees.n_deg;
    if (m < 1 || n < 0)
    {
        throw ValidationError("M: a component needs M >= 1 and N >= 0");
    }
    require_length(comp.degrees.q, m + 1, "q");
    require_length(comp.degrees.p, n + 1, "p");
    require_length(comp.w1, m, "w1");
    require_length(comp.b1, m, "b1");
    require_length(comp.w2, m, "w2");
    require_length(comp.factors.c0, m, "C0");
    require_length(comp.factors.c1, m, "C1");
    require_length(comp.activation.alpha, activation_degree(comp.degrees) + 1, "alpha");
    if (!is_finite(comp.b2))
    {
        throw ValidationError("b2: non-finite");
    }
    if (comp.activation.gamma1 == cplx(0.0) || !is_finite(comp.activation.gamma0) ||
        !is_finite(comp.activation.gamma1))
    {
        throw ValidationError("gamma: gamma1 must be nonzero and both entries finite");
    }
    const HiddenParams h = hidden_params(comp.factors, comp.activation);
    if (h.w1 != comp.w1)
    {
        throw ValidationError("w1: does not equal C1 / gamma1");
    }
    if (h.b1 != comp.b1)
    {
        throw ValidationError("b1: does not equal (gamma0 - C0) / gamma1");
    }
    if (comp.ls_relative_residual <= 1e-10)
    {
        std::mt19937_64 gen(0x5eed);
        for (int i = 0; i < 32; ++i)
        {
            const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * unit_uniform(gen()));
            const cplx ref = eval_pade(comp, z);
            const cplx net = eval_component(comp, z);
            if (is_complex_infinity(ref) || is_complex_infinity(net))
            {
                continue;
            }
            if (std::abs(net - ref) > 1e-8 * (1.0 + std::abs(ref)))
            {
                throw ValidationError("w2: network does not reproduce p/q");
            }
        }
    }
}

} // namespace lpnet
