#include "lpnet/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <future>
#include <iomanip>
#include <map>
#include <sstream>

#include "lpnet/activation.hpp"
#include "lpnet/pade.hpp"

namespace lpnet
{

namespace
{

double parse_real(const std::string& text, const std::string& what)
{
    std::size_t used = 0;
    double value = 0.0;
    try
    {
        value = std::stod(text, &used);
    }
    catch (const std::exception&)
    {
        throw ValidationError("cannot parse " + what + " from '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(value))
    {
        throw ValidationError("cannot parse " + what + " from '" + text + "'");
    }
    return value;
}

DegreeEstimate side_degrees(const CVector& c, int n1, int m1, const FitConfig& cfg)
{
    DegreeEstimate d = estimate_degrees(c, n1, m1, cfg.tol);
    if (cfg.normalize_q0 && d.m_deg > 0)
    {
        const cplx q0 = d.q(0);
        d.q /= q0;
        d.p /= q0;
    }
    return d;
}

// A side whose whole window is rounding noise next to the other side.
DegreeEstimate negligible_side(const CVector& c, const FitConfig& cfg)
{
    DegreeEstimate d;
    d.tau = cfg.tol * c.norm();
    d.p = c.head(1);
    d.q = CVector::Ones(1);
    d.m_trace.push_back(0);
    return d;
}

// p/q + constant as a single quotient (p + constant q) / q.
void fold_constant(DegreeEstimate& d, cplx constant)
{
    const Eigen::Index len = std::max(d.p.size(), d.q.size());
    CVector p = CVector::Zero(len);
    p.head(d.p.size()) = d.p;
    p.head(d.q.size()) += constant * d.q;
    d.p = p;
    d.n_deg = static_cast<int>(len) - 1;
}

} // namespace

void validate(const FitConfig& cfg)
{
    if (!(cfg.tol > 0.0))
    {
        throw ValidationError("tol must be positive");
    }
    if (!(cfg.rho > 0.0))
    {
        throw ValidationError("rho must be positive");
    }
    if (cfg.n1_plus < 0 || cfg.m1_plus < 0 || cfg.n1_minus < 0 || cfg.m1_minus < 0)
    {
        throw ValidationError("degree bounds must be nonnegative");
    }
    if (cfg.n < 0 || cfg.fit_points < 0)
    {
        throw ValidationError("n and fit_points must be nonnegative");
    }
    const int need = std::max(cfg.n1_plus + cfg.m1_plus, cfg.n1_minus + cfg.m1_minus);
    if (cfg.n > 0 && cfg.n < need)
    {
        throw ValidationError("n = " + std::to_string(cfg.n) + " is smaller than N1 + M1 = " +
                              std::to_string(need));
    }
    if (cfg.activation_samples < 2)
    {
        throw ValidationError("activation_samples must be at least 2");
    }
    validate(cfg.rect);
    make_seed(cfg.phi, cfg.z0);
}

Model fit(const ContourSamples& samples, const FitConfig& cfg)
{
    validate(samples);
    FitConfig run = cfg;
    if (run.n > 0 && run.n != samples.n())
    {
        throw ValidationError("config n = " + std::to_string(run.n) + " but samples carry n = " +
                              std::to_string(samples.n()));
    }
    run.n = samples.n();
    run.rho = samples.rho;
    validate(run);
    const LaurentWindow w = compute_coefficients(samples);
    const SplitWindows split =
        split_windows(w, run.n1_plus, run.m1_plus, run.n1_minus, run.m1_minus);
    return fit_from_split(split, run);
}

Model fit_from_split(const SplitWindows& windows, const FitConfig& cfg)
{
    validate(cfg);
    const int fit_points = cfg.fit_points > 0 ? cfg.fit_points : 2 * cfg.n;
    if (fit_points <= 0)
    {
        throw ValidationError("either n or fit_points must be set");
    }

    const double plus_norm = windows.plus.norm();
    const double minus_norm = windows.minus.norm();
    auto plus_future = std::async(std::launch::async, [&] {
        return plus_norm <= cfg.tol * minus_norm
                   ? negligible_side(windows.plus, cfg)
                   : side_degrees(windows.plus, cfg.n1_plus, cfg.m1_plus, cfg);
    });
    DegreeEstimate minus_deg = minus_norm <= cfg.tol * plus_norm
                                   ? negligible_side(windows.minus, cfg)
                                   : side_degrees(windows.minus, cfg.n1_minus, cfg.m1_minus, cfg);
    DegreeEstimate plus_deg = plus_future.get();

    if (plus_deg.m_deg == 0 && minus_deg.m_deg == 0)
    {
        throw NumericalError(
            "function appears analytic in the sampled annulus; no network to build");
    }

    Model model;
    model.config = cfg;
    if (plus_deg.m_deg == 0 || minus_deg.m_deg == 0)
    {
        const bool plus_analytic = plus_deg.m_deg == 0;
        const DegreeEstimate& analytic = plus_analytic ? plus_deg : minus_deg;
        fold_constant(plus_analytic ? minus_deg : plus_deg, analytic.p(0));
        model.remainder_sign = plus_analytic ? Sign::plus : Sign::minus;
        model.remainder = analytic.p;
        model.remainder(0) = 0.0;
        if (model.remainder.cwiseAbs().maxCoeff() == 0.0)
        {
            model.remainder.resize(0);
        }
    }

    const SeedFunction seed = make_seed(cfg.phi, cfg.z0);
    std::map<int, Activation> shared;
    auto activation_for = [&](const DegreeEstimate& d) {
        const int degree = activation_degree(d);
        if (!cfg.shared_activation)
        {
            return build_activation(seed, degree, cfg.activation_samples);
        }
        auto it = shared.find(degree);
        if (it == shared.end())
        {
            it = shared.emplace(degree, build_activation(seed, degree, cfg.activation_samples))
                     .first;
        }
        return it->second;
    };

    std::optional<Activation> plus_act;
    std::optional<Activation> minus_act;
    if (plus_deg.m_deg > 0)
    {
        plus_act = activation_for(plus_deg);
    }
    if (minus_deg.m_deg > 0)
    {
        minus_act = activation_for(minus_deg);
    }

    std::future<NetworkComponent> plus_build;
    if (plus_act)
    {
        plus_build = std::async(std::launch::async, [&] {
            return build_component(Sign::plus, plus_deg, *plus_act, cfg.rect, cfg.seed,
                                   fit_points);
        });
    }
    if (minus_act)
    {
        model.minus = build_component(Sign::minus, minus_deg, *minus_act, cfg.rect,
                                      cfg.seed + 1, fit_points);
    }
    if (plus_act)
    {
        model.plus = plus_build.get();
    }

    for (const NetworkComponent* comp : {model.plus_ptr(), model.minus_ptr()})
    {
        if (comp != nullptr)
        {
            const std::vector<PoleEstimate> poles = recover_poles(*comp);
            model.pole_report.insert(model.pole_report.end(), poles.begin(), poles.end());
        }
    }
    return model;
}

cplx eval_model(const Model& m, cplx z)
{
    if (m.minus && z == cplx(0.0))
    {
        return complex_infinity();
    }
    const cplx value = eval_network(m.plus_ptr(), m.minus_ptr(), z);
    if (m.remainder.size() == 0 || is_complex_infinity(value))
    {
        return value;
    }
    if (m.remainder_sign == Sign::minus && z == cplx(0.0))
    {
        return complex_infinity();
    }
    const cplx x = m.remainder_sign == Sign::plus ? z : 1.0 / z;
    return value + numkit::polyval(m.remainder, x);
}

AxisRange parse_range(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':'))
    {
        parts.push_back(item);
    }
    if (parts.size() != 3)
    {
        throw ValidationError("range must look like lo:hi:count, got '" + text + "'");
    }
    AxisRange r;
    r.lo = parse_real(parts[0], "range start");
    r.hi = parse_real(parts[1], "range end");
    const double count = parse_real(parts[2], "range count");
    if (count < 2 || count != std::floor(count) || count > 1e6)
    {
        throw ValidationError("range count must be an integer >= 2");
    }
    r.count = static_cast<int>(count);
    if (!(r.lo < r.hi))
    {
        throw ValidationError("range needs lo < hi");
    }
    return r;
}

std::vector<GridPoint> eval_grid(const Model& m, const AxisRange& re, const AxisRange& im)
{
    if (re.count < 2 || im.count < 2)
    {
        throw ValidationError("grid resolution must be at least 2 per axis");
    }
    std::vector<GridPoint> grid;
    grid.reserve(static_cast<std::size_t>(re.count) * im.count);
    for (int i = 0; i < re.count; ++i)
    {
        const double x = re.lo + (re.hi - re.lo) * i / (re.count - 1);
        for (int j = 0; j < im.count; ++j)
        {
            const double y = im.lo + (im.hi - im.lo) * j / (im.count - 1);
            GridPoint g;
            g.re = x;
            g.im = y;
            const cplx z(x, y);
            g.at_pole = std::any_of(m.pole_report.begin(), m.pole_report.end(),
                                    [&](const PoleEstimate& e) {
                                        return !e.at_infinity && std::abs(z - e.location) <= 1e-12;
                                    });
            g.value = g.at_pole ? complex_infinity() : eval_model(m, z);
            g.at_pole = g.at_pole || is_complex_infinity(g.value);
            grid.push_back(g);
        }
    }
    return grid;
}

void write_grid_csv(const std::vector<GridPoint>& grid, std::ostream& out)
{
    out << "re,im,abs,arg\n";
    out << std::setprecision(17);
    for (const GridPoint& g : grid)
    {
        out << g.re << ',' << g.im << ',';
        if (g.at_pole)
        {
            out << "inf,inf\n";
        }
        else
        {
            out << std::abs(g.value) << ',' << std::arg(g.value) << '\n';
        }
    }
}

cplx parse_complex(const std::string& text)
{
    std::string s;
    for (char ch : text)
    {
        if (!std::isspace(static_cast<unsigned char>(ch)))
        {
            s.push_back(ch);
        }
    }
    if (s.empty())
    {
        throw ValidationError("empty complex literal");
    }
    if (s.back() != 'i' && s.back() != 'j')
    {
        return {parse_real(s, "complex literal"), 0.0};
    }
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t pos = s.size(); pos-- > 1;)
    {
        if ((s[pos] == '+' || s[pos] == '-') && s[pos - 1] != 'e' && s[pos - 1] != 'E')
        {
            split = pos;
            break;
        }
    }
    std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_part = split == std::string::npos ? s : s.substr(split);
    if (im_part.empty() || im_part == "+")
    {
        im_part = "1";
    }
    else if (im_part == "-")
    {
        im_part = "-1";
    }
    const double re = re_part.empty() ? 0.0 : parse_real(re_part, "complex literal");
    return {re, parse_real(im_part, "complex literal")};
}

} // namespace lpnet
