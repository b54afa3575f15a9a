#ifndef LPNET_TEST_HELPERS_HPP
#define LPNET_TEST_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lpnet/numkit.hpp"

namespace testkit
{

using lpnet::cplx;
using lpnet::CMatrix;
using lpnet::CVector;

inline CVector random_vector(std::mt19937_64& gen, Eigen::Index n)
{
    std::normal_distribution<double> g(0.0, 1.0);
    CVector v(n);
    for (auto& x : v)
    {
        x = {g(gen), g(gen)};
    }
    return v;
}

inline CMatrix random_matrix(std::mt19937_64& gen, Eigen::Index r, Eigen::Index c)
{
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
    {
        for (Eigen::Index i = 0; i < r; ++i)
        {
            m(i, j) = {g(gen), g(gen)};
        }
    }
    return m;
}

/// O(n^2) DFT straight from the definition.
inline CVector direct_dft(const CVector& x)
{
    const Eigen::Index n = x.size();
    CVector out = CVector::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k)
    {
        for (Eigen::Index j = 0; j < n; ++j)
        {
            out(k) += x(j) * std::polar(1.0, -2.0 * std::numbers::pi * double(j * k % n) / double(n));
        }
    }
    return out;
}

/// Greedy matching distance between two root sets of equal size.
inline double multiset_distance(std::vector<cplx> a, std::vector<cplx> b)
{
    if (a.size() != b.size())
    {
        return INFINITY;
    }
    double worst = 0.0;
    for (const cplx& x : a)
    {
        auto it = std::min_element(b.begin(), b.end(), [&](const cplx& u, const cplx& v) {
            return std::abs(u - x) < std::abs(v - x);
        });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

inline std::vector<cplx> to_std(const CVector& v)
{
    return std::vector<cplx>(v.begin(), v.end());
}

} // namespace testkit

#endif // LPNET_TEST_HELPERS_HPP
