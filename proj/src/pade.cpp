#include "lpnet/pade.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lpnet
{

namespace
{

cplx coeff(const CVector& c, Eigen::Index k)
{
    return (k >= 0 && k < c.size()) ? c(k) : cplx(0.0);
}

CVector convolve_head(const CVector& c, const CVector& q, int n_deg)
{
    CVector p(n_deg + 1);
    for (int k = 0; k <= n_deg; ++k)
    {
        cplx acc = 0.0;
        for (int j = 0; j <= std::min<int>(k, static_cast<int>(q.size()) - 1); ++j)
        {
            acc += coeff(c, k - j) * q(j);
        }
        p(k) = acc;
    }
    return p;
}

int leading_small(const CVector& v, double tol)
{
    int count = 0;
    while (count < v.size() - 1 && std::abs(v(count)) <= tol)
    {
        ++count;
    }
    return count;
}

int trailing_small(const CVector& v, double tol)
{
    int count = 0;
    while (count < v.size() - 1 && std::abs(v(v.size() - 1 - count)) <= tol)
    {
        ++count;
    }
    return count;
}

} // namespace

CMatrix build_toeplitz(const CVector& c, int n_deg, int m_deg)
{
    if (n_deg < 0 || m_deg < 0)
    {
        throw ValidationError("Toeplitz degrees must be nonnegative");
    }
    CMatrix t(m_deg, m_deg + 1);
    for (int k = 1; k <= m_deg; ++k)
    {
        for (int l = 0; l <= m_deg; ++l)
        {
            t(k - 1, l) = coeff(c, n_deg + k - l);
        }
    }
    return t;
}

CVector pade_defect(const CVector& c, const CVector& p, const CVector& q, int order)
{
    CVector out(order + 1);
    for (int k = 0; k <= order; ++k)
    {
        cplx acc = -coeff(p, k);
        for (Eigen::Index j = 0; j < q.size() && j <= k; ++j)
        {
            acc += coeff(c, k - j) * q(j);
        }
        out(k) = acc;
    }
    return out;
}

DegreeEstimate estimate_degrees(const CVector& c, int n1, int m1, double tol)
{
    if (n1 < 0 || m1 < 0)
    {
        throw ValidationError("n1 and m1 must be nonnegative");
    }
    if (!(tol > 0.0))
    {
        throw ValidationError("tol must be positive");
    }
    if (c.size() < n1 + m1 + 1)
    {
        throw ValidationError("coefficient vector has " + std::to_string(c.size()) +
                              " entries, need n1 + m1 + 1 = " + std::to_string(n1 + m1 + 1));
    }
    if (!all_finite(c))
    {
        throw NumericalError("coefficient vector has non-finite entries");
    }

    DegreeEstimate est;
    est.tau = tol * c.norm();
    int n_deg = n1;
    int m_deg = m1;
    est.m_trace.push_back(m_deg);

    CVector q = CVector::Ones(1);
    while (m_deg > 0)
    {
        const numkit::SvdResult s = numkit::svd(build_toeplitz(c, n_deg, m_deg));
        const int mu = static_cast<int>((s.singular_values.array() > est.tau).count());
        if (mu < m_deg)
        {
            n_deg -= m_deg - mu;
            if (n_deg < 0)
            {
                n_deg = 0;
                est.n_clamped = true;
            }
            m_deg = mu;
            ++est.svd_iterations;
            est.m_trace.push_back(m_deg);
            continue;
        }
        q = numkit::normalize_phase(s.right_vectors.col(m_deg));
        break;
    }

    CVector p = convolve_head(c, q, n_deg);

    const int lead = leading_small(q, tol);
    if (lead > 0)
    {
        const int shift = std::min(lead, n_deg);
        q = q.tail(q.size() - lead).eval();
        p = p.tail(p.size() - shift).eval();
        m_deg -= lead;
        n_deg -= shift;
        est.trim_log.push_back({"leading-q", lead});
    }
    const int trail_q = trailing_small(q, tol);
    if (trail_q > 0)
    {
        q = q.head(q.size() - trail_q).eval();
        m_deg -= trail_q;
        est.trim_log.push_back({"trailing-q", trail_q});
    }
    const int trail_p = trailing_small(p, tol);
    if (trail_p > 0)
    {
        p = p.head(p.size() - trail_p).eval();
        n_deg -= trail_p;
        est.trim_log.push_back({"trailing-p", trail_p});
    }

    est.n_deg = n_deg;
    est.m_deg = m_deg;
    est.p = p;
    est.q = q;
    const int order = std::min<int>(n_deg + m_deg, static_cast<int>(c.size()) - 1);
    est.relation_residual = pade_defect(c, p, q, order).cwiseAbs().maxCoeff();
    if (lead > 0 && est.relation_residual > 10.0 * est.tau)
    {
        est.relation_warning = true;
    }
    return est;
}

} // namespace lpnet
