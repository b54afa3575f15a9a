#ifndef LPNET_PADE_HPP
#define LPNET_PADE_HPP

///
/// \file pade.hpp
///
/// Degree detection and Pade coefficients for a one-sided coefficient vector
/// by repeated Toeplitz SVD rank reduction followed by trimming.
///

#include <string>
#include <vector>

#include "lpnet/numkit.hpp"

namespace lpnet
{

struct TrimRecord
{
    std::string stage; ///< "leading-q", "trailing-q" or "trailing-p"
    int lambda = 0;
};

struct DegreeEstimate
{
    int n_deg = 0;
    int m_deg = 0;
    CVector p; ///< length n_deg + 1, constant first
    CVector q; ///< length m_deg + 1, constant first
    double tau = 0.0;
    int svd_iterations = 0;    ///< passes that reduced M
    std::vector<int> m_trace;  ///< M before the first pass and after each reduction
    std::vector<TrimRecord> trim_log;
    double relation_residual = 0.0; ///< max |(q c - p)_k|, k <= N + M
    bool n_clamped = false;         ///< N would have dropped below 0
    bool relation_warning = false;  ///< leading trim broke the Pade relation
};

/// M x (M + 1) matrix with entry (k - 1, l) = c_{N + k - l}, k = 1..M,
/// l = 0..M; indices outside c read as 0. m_deg = 0 gives a 0 x 1 matrix.
CMatrix build_toeplitz(const CVector& c, int n_deg, int m_deg);

DegreeEstimate estimate_degrees(const CVector& c, int n1, int m1, double tol = 1e-14);

/// Coefficients of q(z) c(z) - p(z) for orders 0..order (c read as 0 past its end).
CVector pade_defect(const CVector& c, const CVector& p, const CVector& q, int order);

} // namespace lpnet

#endif // LPNET_PADE_HPP
