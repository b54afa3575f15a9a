#include "lpnet/pdelab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace lpnet
{

namespace
{

int sign_of(int k)
{
    return (k > 0) - (k < 0);
}

cplx first_or_nan(const CVector& v)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return v.size() > 0 ? v(0) : cplx(nan, nan);
}

} // namespace

StateSource state_source_from_string(const std::string& s)
{
    if (s == "ode")
    {
        return StateSource::ode;
    }
    if (s == "exact")
    {
        return StateSource::exact;
    }
    if (s == "auto")
    {
        return StateSource::automatic;
    }
    throw ValidationError("state source must be ode, exact or auto, got '" + s + "'");
}

std::string to_string(StateSource s)
{
    switch (s)
    {
    case StateSource::ode:
        return "ode";
    case StateSource::exact:
        return "exact";
    default:
        return "auto";
    }
}

void validate(const PdeConfig& cfg)
{
    if (!(cfg.eta > 0.0) || !(cfg.nu > 0.0))
    {
        throw ValidationError("eta and nu must be positive");
    }
    if (!(cfg.beta >= 0.0) || !std::isfinite(cfg.beta))
    {
        throw ValidationError("beta must be finite and nonnegative");
    }
    if (cfg.n < 1)
    {
        throw ValidationError("spectral cutoff n must be at least 1");
    }
    if (!(cfg.dt > 0.0))
    {
        throw ValidationError("dt must be positive");
    }
    if (!std::is_sorted(cfg.times.begin(), cfg.times.end()))
    {
        throw ValidationError("output times must be sorted");
    }
    for (double t : cfg.times)
    {
        if (!(t >= 0.0 && t <= 1.0))
        {
            throw ValidationError("output times must lie in [0, 1]");
        }
    }
}

double blowup_time(const PdeConfig& cfg)
{
    return -std::log(cfg.beta) / cfg.eta;
}

cplx exact_solution(const PdeConfig& cfg, cplx x, double t)
{
    const double b = cfg.beta * std::exp(cfg.eta * t);
    const cplx den = 1.0 + b * b - 2.0 * b * std::cos(x);
    if (std::abs(den) <= 1e-13)
    {
        return complex_infinity();
    }
    return cfg.eta + cfg.nu * (1.0 - b * b) / den;
}

SpectralState exact_spectral(const PdeConfig& cfg, double t, int samples_per_period)
{
    if (samples_per_period < 2 * cfg.n)
    {
        throw ValidationError("need at least 2n samples per period");
    }
    CVector v(samples_per_period);
    for (int j = 0; j < samples_per_period; ++j)
    {
        v(j) = exact_solution(cfg, 2.0 * std::numbers::pi * j / samples_per_period, t);
    }
    if (!all_finite(v))
    {
        throw NumericalError("closed-form solution is singular on the real axis at t = " +
                             std::to_string(t));
    }
    const CVector spectrum = numkit::fft(v);
    SpectralState s;
    s.t = t;
    s.a.resize(2 * cfg.n + 1);
    for (int k = -cfg.n; k <= cfg.n; ++k)
    {
        const int idx = k >= 0 ? k : samples_per_period + k;
        s.a(k + cfg.n) = spectrum(idx) / static_cast<double>(samples_per_period);
    }
    return s;
}

SpectralState init_spectral(const PdeConfig& cfg)
{
    validate(cfg);
    return exact_spectral(cfg, 0.0, 2 * cfg.n);
}

CVector spectral_rhs(const CVector& a, double nu, bool linear_only)
{
    const int n = static_cast<int>((a.size() - 1) / 2);
    CVector out(a.size());
    for (int k = -n; k <= n; ++k)
    {
        cplx conv = 0.0;
        if (!linear_only && k != 0)
        {
            const int lo = std::max(-n, k - n);
            const int hi = std::min(n, k + n);
            for (int j = lo; j <= hi; ++j)
            {
                if (j != 0)
                {
                    conv += static_cast<double>(sign_of(j)) * a(j + n) * a(k - j + n);
                }
            }
        }
        out(k + n) = -nu * k * k * a(k + n) + static_cast<double>(k) * conv;
    }
    return out;
}

SpectralState step_ode(const SpectralState& state, double dt, const PdeConfig& cfg,
                       bool linear_only)
{
    if (!(dt > 0.0))
    {
        throw ValidationError("dt must be positive");
    }
    const CVector& a = state.a;
    const CVector k1 = spectral_rhs(a, cfg.nu, linear_only);
    const CVector k2 = spectral_rhs(a + 0.5 * dt * k1, cfg.nu, linear_only);
    const CVector k3 = spectral_rhs(a + 0.5 * dt * k2, cfg.nu, linear_only);
    const CVector k4 = spectral_rhs(a + dt * k3, cfg.nu, linear_only);
    SpectralState next;
    next.t = state.t + dt;
    next.a = a + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!all_finite(next.a) || next.a.cwiseAbs().maxCoeff() > 1e12)
    {
        throw NumericalError("spectral blow-up at t = " + std::to_string(next.t));
    }
    return next;
}

SpectralState integrate(const SpectralState& state, double t_end, const PdeConfig& cfg)
{
    const double span = t_end - state.t;
    if (span < 0.0)
    {
        throw ValidationError("cannot integrate backwards in time");
    }
    if (span == 0.0)
    {
        return state;
    }
    const long steps = static_cast<long>(std::ceil(span / cfg.dt - 1e-9));
    const double h = span / static_cast<double>(steps);
    SpectralState s = state;
    const double t0 = state.t;
    for (long i = 1; i <= steps; ++i)
    {
        s = step_ode(s, h, cfg);
        s.t = t0 + h * static_cast<double>(i);
    }
    s.t = t_end;
    return s;
}

FitConfig default_pde_fit_config(int n)
{
    FitConfig cfg;
    cfg.n = n;
    cfg.n1_plus = cfg.m1_plus = cfg.n1_minus = cfg.m1_minus = std::min(10, n / 2);
    cfg.tol = 1e-3;
    cfg.phi = "cos";
    cfg.z0 = {-1.2, 0.0};
    cfg.normalize_q0 = true;
    cfg.rho = 1.0;
    return cfg;
}

Model fit_at_time(const SpectralState& state, const FitConfig& cfg_fit)
{
    const int n = state.n();
    SplitWindows w;
    w.plus.resize(n + 1);
    w.minus.resize(n + 1);
    w.plus(0) = state.at(0) / 2.0;
    w.minus(0) = state.at(0) / 2.0;
    for (int k = 1; k <= n; ++k)
    {
        w.plus(k) = state.at(k);
        w.minus(k) = state.at(-k);
    }
    FitConfig cfg = cfg_fit;
    cfg.n = n;
    cfg.rho = 1.0;
    return fit_from_split(w, cfg);
}

SingularityTrack track_singularities(const Model& model, double t, const PdeConfig& cfg)
{
    SingularityTrack track;
    track.time = t;
    const cplx z1(0.0, cfg.eta * t + std::log(cfg.beta));
    track.truth = {z1, -z1};
    for (const PoleEstimate& e : model.pole_report)
    {
        SingularityEstimate s;
        s.sign = e.component_sign;
        s.neuron = e.neuron_index;
        if (e.at_infinity || e.location == cplx(0.0))
        {
            s.s = complex_infinity();
            s.flagged = true;
            s.error = std::numeric_limits<double>::infinity();
            track.estimates.push_back(s);
            continue;
        }
        s.s = cplx(0.0, -1.0) * std::log(e.location);
        s.flagged = e.component_sign == Sign::plus ? !(s.s.imag() < 0.0) : !(s.s.imag() > 0.0);
        const double d1 = std::abs(s.s - z1);
        const double d2 = std::abs(s.s + z1);
        s.nearest_truth = d1 <= d2 ? z1 : -z1;
        s.error = std::min(d1, d2);
        track.estimates.push_back(s);
    }
    return track;
}

TrajectoryReport trajectory_report(const PdeConfig& cfg, const FitConfig& cfg_fit,
                                   const std::vector<double>& times)
{
    PdeConfig run = cfg;
    run.times = times;
    validate(run);
    TrajectoryReport report;
    report.blowup_time = blowup_time(run);

    SpectralState ode_state = init_spectral(run);
    for (double t : times)
    {
        TrajectoryRow row;
        row.t = t;
        row.near_blowup = std::abs(t - report.blowup_time) < run.dt;
        const bool use_exact = run.source == StateSource::exact ||
                               (run.source == StateSource::automatic && t >= report.blowup_time);
        if (use_exact)
        {
            row.state = exact_spectral(run, t, 2 * run.n);
            row.source = "exact";
        }
        else
        {
            ode_state = integrate(ode_state, t, run);
            row.state = ode_state;
            row.source = "ode";
        }
        row.model = fit_at_time(row.state, cfg_fit);
        row.track = track_singularities(row.model, t, run);
        if (row.model.plus)
        {
            row.w_plus = first_or_nan(row.model.plus->w1);
            row.b_plus = first_or_nan(row.model.plus->b1);
        }
        if (row.model.minus)
        {
            row.w_minus = first_or_nan(row.model.minus->w1);
            row.b_minus = first_or_nan(row.model.minus->b1);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<double> parse_times(const std::string& text)
{
    std::vector<std::string> parts;
    const char sep = text.find(':') != std::string::npos ? ':' : ',';
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
    {
        parts.push_back(item);
    }
    auto number = [](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(s, &used);
        }
        catch (const std::exception&)
        {
            throw ValidationError("cannot parse time '" + s + "'");
        }
        if (used != s.size())
        {
            throw ValidationError("cannot parse time '" + s + "'");
        }
        return v;
    };
    std::vector<double> out;
    if (sep == ':')
    {
        if (parts.size() != 3)
        {
            throw ValidationError("times must look like lo:step:hi");
        }
        const double lo = number(parts[0]);
        const double step = number(parts[1]);
        const double hi = number(parts[2]);
        if (!(step > 0.0) || hi < lo)
        {
            throw ValidationError("times need step > 0 and hi >= lo");
        }
        const long count = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (long i = 0; i < count; ++i)
        {
            out.push_back(lo + step * static_cast<double>(i));
        }
    }
    else
    {
        for (const std::string& p : parts)
        {
            out.push_back(number(p));
        }
    }
    return out;
}

} // namespace lpnet
