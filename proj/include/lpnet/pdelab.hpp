#ifndef LPNET_PDELAB_HPP
#define LPNET_PDELAB_HPP

///
/// \file pdelab.hpp
///
/// Spectral solver for the periodic Burgers-type equation with a Hilbert
/// transform term, its closed-form solution, and singularity tracking by
/// fitting the network to the Fourier coefficients at each output time.
///

#include <string>
#include <vector>

#include "lpnet/pipeline.hpp"

namespace lpnet
{

/// Where the Fourier coefficients at an output time come from.
enum class StateSource
{
    ode,   ///< RK4 integration of the truncated coefficient system
    exact, ///< DFT of the closed-form solution on 2n points
    automatic ///< ode before the blow-up time, exact from then on
};

StateSource state_source_from_string(const std::string& s);
std::string to_string(StateSource s);

struct PdeConfig
{
    double eta = 1.0;
    double nu = 0.1;
    double beta = 0.7788007830714049; ///< e^{-1/4}
    int n = 40;
    double dt = 1e-3;
    std::vector<double> times;
    StateSource source = StateSource::automatic;
};

void validate(const PdeConfig& cfg);

/// -ln(beta) / eta.
double blowup_time(const PdeConfig& cfg);

/// v(x, t) for real x; the analytic extension u(z, t) for complex x.
/// complex_infinity() when the denominator is within 1e-13 of zero.
cplx exact_solution(const PdeConfig& cfg, cplx x, double t);

/// Fourier coefficients a_{-n}..a_n at time t.
struct SpectralState
{
    double t = 0.0;
    CVector a; ///< a(k + n) = a_k

    int n() const { return static_cast<int>((a.size() - 1) / 2); }
    cplx at(int k) const { return a(k + n()); }
};

/// Coefficients of the closed form at time t from samples_per_period equispaced
/// points (2n gives the solver's own grid).
SpectralState exact_spectral(const PdeConfig& cfg, double t, int samples_per_period);

SpectralState init_spectral(const PdeConfig& cfg);

/// Right-hand side -nu k^2 a_k + k sum_{j+l=k} sign(j) a_j a_l; the quadratic
/// term is dropped when linear_only is set.
CVector spectral_rhs(const CVector& a, double nu, bool linear_only = false);

/// One classical RK4 step. Throws NumericalError("spectral blow-up") once any
/// |a_k| exceeds 1e12.
SpectralState step_ode(const SpectralState& state, double dt, const PdeConfig& cfg,
                       bool linear_only = false);

/// RK4 from state.t to t_end in equal steps no longer than cfg.dt.
SpectralState integrate(const SpectralState& state, double t_end, const PdeConfig& cfg);

/// Fit on (a_0/2, a_1, ...) and (a_0/2, a_{-1}, ...), read as series in e^{ix}.
Model fit_at_time(const SpectralState& state, const FitConfig& cfg_fit);

/// Defaults used by the singularity experiments: N1 = M1 = 10 on both sides,
/// tol 1e-3, q_0 normalized to 1, phi = cos, z0 = -1.2.
FitConfig default_pde_fit_config(int n);

struct SingularityEstimate
{
    Sign sign = Sign::plus;
    int neuron = 0;
    cplx s;
    bool flagged = false; ///< imaginary-part sign constraint violated
    cplx nearest_truth;
    double error = 0.0;
};

struct SingularityTrack
{
    double time = 0.0;
    std::vector<SingularityEstimate> estimates;
    std::vector<cplx> truth; ///< +-i (eta t + ln beta)
};

SingularityTrack track_singularities(const Model& model, double t, const PdeConfig& cfg);

struct TrajectoryRow
{
    double t = 0.0;
    std::string source;
    bool near_blowup = false;
    cplx w_plus, b_plus, w_minus, b_minus;
    SingularityTrack track;
    Model model;
    SpectralState state;
};

struct TrajectoryReport
{
    double blowup_time = 0.0;
    std::vector<TrajectoryRow> rows;
};

TrajectoryReport trajectory_report(const PdeConfig& cfg, const FitConfig& cfg_fit,
                                   const std::vector<double>& times);

/// "lo:step:hi" inclusive list, or a comma-separated list.
std::vector<double> parse_times(const std::string& text);

} // namespace lpnet

#endif // LPNET_PDELAB_HPP
