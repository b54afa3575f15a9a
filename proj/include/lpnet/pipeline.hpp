#ifndef LPNET_PIPELINE_HPP
#define LPNET_PIPELINE_HPP

///
/// \file pipeline.hpp
///
/// End-to-end construction: samples -> Laurent window -> degrees -> activation
/// -> components -> pole estimates, plus grid evaluation.
///

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lpnet/laurent.hpp"
#include "lpnet/network.hpp"

namespace lpnet
{

struct FitConfig
{
    int n = 0;         ///< sample half-count; 0 takes it from the samples
    double rho = 0.99; ///< overwritten by the sample radius in fit()
    int n1_plus = 10;
    int m1_plus = 10;
    int n1_minus = 10;
    int m1_minus = 10;
    double tol = 1e-14;
    Rect rect;
    std::uint64_t seed = 0;
    std::string phi = "cos";
    cplx z0{-1.2, 0.0};
    bool shared_activation = true;
    int activation_samples = 64;
    int fit_points = 0;        ///< least-squares nodes; 0 means 2n
    bool normalize_q0 = false; ///< rescale (p, q) so that q_0 = 1
};

void validate(const FitConfig& cfg);

struct Model
{
    std::optional<NetworkComponent> plus;
    std::optional<NetworkComponent> minus;
    FitConfig config;
    std::vector<PoleEstimate> pole_report;
    /// Nonconstant part of an analytic side (M = 0), a polynomial in z (plus)
    /// or 1/z (minus); its constant term is folded into the other component.
    Sign remainder_sign = Sign::plus;
    CVector remainder;

    const NetworkComponent* plus_ptr() const { return plus ? &*plus : nullptr; }
    const NetworkComponent* minus_ptr() const { return minus ? &*minus : nullptr; }
};

Model fit(const ContourSamples& samples, const FitConfig& cfg);

/// Same pipeline starting from the one-sided vectors (each c_0/2 first).
Model fit_from_split(const SplitWindows& windows, const FitConfig& cfg);

cplx eval_model(const Model& m, cplx z);

struct AxisRange
{
    double lo = 0.0;
    double hi = 1.0;
    int count = 2;
};

/// "lo:hi:count"
AxisRange parse_range(const std::string& text);

struct GridPoint
{
    double re = 0.0;
    double im = 0.0;
    cplx value;
    bool at_pole = false;
};

std::vector<GridPoint> eval_grid(const Model& m, const AxisRange& re, const AxisRange& im);

/// Columns re,im,abs,arg; "inf" in abs and arg at poles.
void write_grid_csv(const std::vector<GridPoint>& grid, std::ostream& out);

/// "RE+IMi", "RE-IMi", "RE", "IMi" with optional whitespace.
cplx parse_complex(const std::string& text);

} // namespace lpnet

#endif // LPNET_PIPELINE_HPP
