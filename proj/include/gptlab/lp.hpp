/**
 * Exact feasibility for { x >= 0 : A x = b } by the phase-one simplex
 * method with Bland's rule. An infeasible system comes back with a Farkas
 * vector y satisfying y^T A >= 0 and y^T b < 0.
 */

#ifndef GPTLAB_LP_HPP
#define GPTLAB_LP_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "linalg.hpp"

namespace gptlab {

struct FeasibilityResult
{
    bool feasible = false;
    Vec solution;   // basic feasible solution when feasible
    Vec farkas;     // certificate of infeasibility otherwise
};

/// Re-checks a Farkas certificate for { x >= 0 : A x = b } against the data.
inline bool is_farkas_certificate(const Mat& a, const Vec& b, const Vec& y)
{
    if (y.dim() != a.rows() || b.dim() != a.rows())
        return false;
    for (std::size_t j = 0; j < a.cols(); ++j)
    {
        Rational s = 0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            s += y[i] * a(i, j);
        if (s < 0)
            return false;
    }
    return inner(y, b) < 0;
}

inline FeasibilityResult find_nonnegative_solution(const Mat& a, const Vec& b)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.dim() != m)
        throw DimensionError("LP right-hand side", b.dim(), m);

    FeasibilityResult result;
    if (m == 0)
    {
        result.feasible = true;
        result.solution = Vec::zero(n);
        return result;
    }

    // Tableau columns: x_0..x_{n-1}, artificial a_0..a_{m-1}, rhs.
    const std::size_t width = n + m;
    std::vector<int> sign(m, 1);
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width + 1));
    for (std::size_t i = 0; i < m; ++i)
    {
        sign[i] = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j)
            t[i][j] = sign[i] * a(i, j);
        t[i][n + i] = 1;
        t[i][width] = sign[i] * b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i)
        basis[i] = n + i;

    // Reduced costs of the phase-one objective sum(a).
    std::vector<Rational> cost(width + 1);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i)
            cost[j] -= t[i][j];
    for (std::size_t i = 0; i < m; ++i)
        cost[width] -= t[i][width];

    for (;;)
    {
        std::size_t enter = width;
        for (std::size_t j = 0; j < width; ++j)
        {
            if (cost[j] < 0)
            {
                enter = j;
                break;
            }
        }
        if (enter == width)
            break;

        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i)
        {
            if (t[i][enter] <= 0)
                continue;
            Rational ratio = t[i][width] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave]))
            {
                leave = i;
                best = ratio;
            }
        }
        // Phase one is bounded below by zero.
        if (leave == m)
            throw InternalError("phase-one simplex reported unbounded");

        Rational piv = t[leave][enter];
        for (Rational& x : t[leave])
            x /= piv;
        for (std::size_t i = 0; i < m; ++i)
        {
            if (i == leave || t[i][enter] == 0)
                continue;
            Rational f = t[i][enter];
            for (std::size_t j = 0; j <= width; ++j)
                t[i][j] -= f * t[leave][j];
        }
        if (cost[enter] != 0)
        {
            Rational f = cost[enter];
            for (std::size_t j = 0; j <= width; ++j)
                cost[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    // cost[width] holds minus the phase-one optimum.
    if (cost[width] == 0)
    {
        std::vector<Rational> x(n);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n)
                x[basis[i]] = t[i][width];
        result.feasible = true;
        result.solution = Vec(std::move(x));
        if (a * result.solution != b)
            throw InternalError("simplex solution does not satisfy A x = b");
        return result;
    }

    // Simplex multipliers are y_k = 1 - reduced cost of artificial k; the
    // Farkas vector is -y mapped back through the row sign flips.
    std::vector<Rational> y(m);
    for (std::size_t k = 0; k < m; ++k)
        y[k] = -(1 - cost[n + k]) * sign[k];
    result.farkas = Vec(std::move(y));
    if (!is_farkas_certificate(a, b, result.farkas))
        throw InternalError("simplex produced an invalid Farkas certificate");
    return result;
}

/**
 * Some w with <w, g> >= 1 for every g (so strictly positive on all of
 * them), or nullopt when no such functional exists.
 */
inline std::optional<Vec> strictly_positive_functional(const std::vector<Vec>& generators, std::size_t dim)
{
    // w = p - q, slack s: <g_i, p - q> - s_i = 1.
    std::size_t n = generators.size();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n; ++i)
    {
        std::vector<Rational> r(2 * dim + n);
        for (std::size_t j = 0; j < dim; ++j)
        {
            r[j] = generators[i][j];
            r[dim + j] = -generators[i][j];
        }
        r[2 * dim + i] = -1;
        rows.emplace_back(std::move(r));
    }
    if (rows.empty())
        return Vec::zero(dim);
    auto res = find_nonnegative_solution(Mat(rows), Vec(std::vector<Rational>(n, Rational(1))));
    if (!res.feasible)
        return std::nullopt;
    std::vector<Rational> w(dim);
    for (std::size_t j = 0; j < dim; ++j)
        w[j] = res.solution[j] - res.solution[dim + j];
    return Vec(std::move(w));
}

}   // namespace gptlab

#endif
