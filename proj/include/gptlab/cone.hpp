/**
 * Polyhedral cones in both generator (ray) and inequality (facet) form,
 * converted by the double description method, plus exact membership
 * certificates.
 */

#ifndef GPTLAB_CONE_HPP
#define GPTLAB_CONE_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "linalg.hpp"
#include "lp.hpp"

namespace gptlab {

/**
 * Canonical order on primitive rays: smaller l1 norm first, ties broken
 * lexicographically in descending order. Searches that enumerate rays
 * use this order, so "simpler" candidates come first.
 */
inline bool canonical_less(const Vec& a, const Vec& b)
{
    Rational na = 0, nb = 0;
    for (const Rational& x : a)
        na += abs(x);
    for (const Rational& x : b)
        nb += abs(x);
    if (na != nb)
        return na < nb;
    return b < a;
}

inline std::vector<Vec> canonical_rays(std::vector<Vec> rays)
{
    std::vector<Vec> out;
    for (const Vec& r : rays)
        if (!r.is_zero())
            out.push_back(primitive(r));
    std::sort(out.begin(), out.end(), canonical_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace detail {

/**
 * Extreme rays of the pointed cone { y : A y >= 0 } where A has full
 * column rank. Incremental double description with the combinatorial
 * adjacency test.
 */
inline std::vector<Vec> pointed_extreme_rays(const std::vector<Vec>& a)
{
    const std::size_t m = a.size();
    const std::size_t k = a.front().dim();

    // Greedy choice of k independent rows for the initial simplicial cone.
    std::vector<std::size_t> order;
    std::vector<Vec> chosen;
    std::vector<bool> used(m, false);
    for (std::size_t i = 0; i < m && chosen.size() < k; ++i)
    {
        chosen.push_back(a[i]);
        if (rank(chosen) == chosen.size())
        {
            order.push_back(i);
            used[i] = true;
        }
        else
            chosen.pop_back();
    }
    if (chosen.size() != k)
        throw InternalError("double description: constraint matrix is not of full column rank");
    for (std::size_t i = 0; i < m; ++i)
        if (!used[i])
            order.push_back(i);

    struct Ray
    {
        Vec y;
        boost::dynamic_bitset<> zero;
    };
    std::vector<Ray> rays;
    Mat inv = inverse(Mat(chosen));
    for (std::size_t j = 0; j < k; ++j)
    {
        std::vector<Rational> col(k);
        for (std::size_t i = 0; i < k; ++i)
            col[i] = inv(i, j);
        Ray r{primitive(Vec(std::move(col))), boost::dynamic_bitset<>(m)};
        for (std::size_t i = 0; i < k; ++i)
            if (i != j)
                r.zero.set(order[i]);
        rays.push_back(std::move(r));
    }

    for (std::size_t step = k; step < m; ++step)
    {
        const Vec& row = a[order[step]];
        std::vector<Rational> val(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r)
        {
            val[r] = inner(row, rays[r].y);
            if (val[r] > 0)
                pos.push_back(r);
            else if (val[r] < 0)
                neg.push_back(r);
            else
                rays[r].zero.set(order[step]);
        }
        if (neg.empty())
            continue;

        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (val[r] >= 0)
                next.push_back(rays[r]);
        for (std::size_t p : pos)
        {
            for (std::size_t q : neg)
            {
                boost::dynamic_bitset<> common = rays[p].zero & rays[q].zero;
                if (k >= 2 && common.count() + 2 < k)
                    continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                {
                    if (r == p || r == q)
                        continue;
                    if (common.is_subset_of(rays[r].zero))
                        adjacent = false;
                }
                if (!adjacent)
                    continue;
                Vec y = primitive(val[p] * rays[q].y - val[q] * rays[p].y);
                common.set(order[step]);
                next.push_back(Ray{std::move(y), std::move(common)});
            }
        }
        rays = std::move(next);
        if (rays.empty())
            break;
    }

    std::vector<Vec> out;
    for (Ray& r : rays)
        out.push_back(std::move(r.y));
    return out;
}

}   // namespace detail

/**
 * A minimal generating set of { x in R^dim : <n, x> >= 0 for all n }.
 * The output is the extreme rays of the pointed part together with +/- a
 * canonical basis of the lineality space, in canonical order.
 */
inline std::vector<Vec> halfspace_generators(std::size_t dim, const std::vector<Vec>& normals)
{
    std::vector<Vec> rows;
    for (const Vec& n : normals)
    {
        if (n.dim() != dim)
            throw DimensionError("halfspace normal", n.dim(), dim);
        if (!n.is_zero())
            rows.push_back(n);
    }
    std::vector<Vec> lineality;
    std::vector<Vec> span;
    if (rows.empty())
    {
        for (std::size_t i = 0; i < dim; ++i)
            lineality.push_back(Vec::basis(dim, i));
    }
    else
    {
        Mat m(rows);
        lineality = null_space(m);
        span = row_space(m);
    }

    std::vector<Vec> out;
    if (!span.empty())
    {
        // Coordinates y in the row space: x = sum_j y_j span_j.
        std::vector<Vec> reduced;
        for (const Vec& n : rows)
        {
            std::vector<Rational> r(span.size());
            for (std::size_t j = 0; j < span.size(); ++j)
                r[j] = inner(n, span[j]);
            reduced.emplace_back(std::move(r));
        }
        for (const Vec& y : detail::pointed_extreme_rays(reduced))
            out.push_back(combine(y.entries(), span, dim));
    }
    for (const Vec& l : lineality)
    {
        out.push_back(l);
        out.push_back(-l);
    }
    return canonical_rays(std::move(out));
}

/**
 * A polyhedral cone. Both representations are computed at construction
 * and stored reduced and canonical, so two cones are equal iff their ray
 * lists are equal.
 */
class Cone
{
    public:
        static Cone from_rays(std::size_t dim, const std::vector<Vec>& rays)
        {
            for (const Vec& r : rays)
                if (r.dim() != dim)
                    throw DimensionError("cone generator", r.dim(), dim);
            std::vector<Vec> facets = halfspace_generators(dim, rays);
            std::vector<Vec> reduced = halfspace_generators(dim, facets);
            return Cone(dim, std::move(reduced), std::move(facets));
        }

        static Cone from_facets(std::size_t dim, const std::vector<Vec>& normals)
        {
            std::vector<Vec> rays = halfspace_generators(dim, normals);
            std::vector<Vec> facets = halfspace_generators(dim, rays);
            return Cone(dim, std::move(rays), std::move(facets));
        }

        std::size_t dim() const { return dim_; }
        const std::vector<Vec>& rays() const& { return rays_; }
        const std::vector<Vec>& facets() const& { return facets_; }
        std::vector<Vec> rays() && { return std::move(rays_); }
        std::vector<Vec> facets() && { return std::move(facets_); }

        bool contains(const Vec& x) const
        {
            return std::all_of(facets_.begin(), facets_.end(), [&](const Vec& n) { return inner(n, x) >= 0; });
        }

        /// No line through the origin lies in the cone.
        bool pointed() const { return !rays_.empty() ? rank(facets_) == dim_ : true; }

        friend bool operator==(const Cone& a, const Cone& b)
        {
            return a.dim_ == b.dim_ && a.rays_ == b.rays_;
        }

        friend Cone dual_cone(const Cone& c);

    private:
        Cone(std::size_t dim, std::vector<Vec> rays, std::vector<Vec> facets)
            : dim_(dim), rays_(std::move(rays)), facets_(std::move(facets))
        {
        }

        std::size_t dim_;
        std::vector<Vec> rays_;
        std::vector<Vec> facets_;
};

/// { f : <f, r> >= 0 for every r in c }.
inline Cone dual_cone(const Cone& c)
{
    return Cone(c.dim(), c.facets(), c.rays());
}

inline std::vector<Vec> extreme_rays(const Cone& c)
{
    return c.rays();
}

inline std::vector<Vec> facets(const Cone& c)
{
    return c.facets();
}

/// Exactly dim extreme rays, linearly independent.
inline bool is_simplicial(const Cone& c)
{
    return c.rays().size() == c.dim() && rank(c.rays()) == c.dim();
}

/**
 * Inside: nonnegative coefficients over the generators reproducing the
 * query. Outside: a functional (separator, offset) with
 * <separator, g> + offset >= 0 on every generator and < 0 on the query.
 * The offset is zero for cone membership.
 */
struct MembershipCertificate
{
    bool inside = false;
    std::vector<Rational> coefficients;
    Vec separator;
    Rational offset = 0;
    bool convex = false;

    bool verify(const Vec& query, const std::vector<Vec>& generators) const
    {
        if (inside)
        {
            if (coefficients.size() != generators.size())
                return false;
            Rational total = 0;
            for (const Rational& c : coefficients)
            {
                if (c < 0)
                    return false;
                total += c;
            }
            if (convex && total != 1)
                return false;
            return combine(coefficients, generators, query.dim()) == query;
        }
        if (separator.dim() != query.dim() || (!convex && offset != 0))
            return false;
        for (const Vec& g : generators)
            if (inner(separator, g) + offset < 0)
                return false;
        return inner(separator, query) + offset < 0;
    }
};

namespace detail {

inline MembershipCertificate membership(const Vec& q, const std::vector<Vec>& gens, bool convex)
{
    const std::size_t d = q.dim();
    for (const Vec& g : gens)
        if (g.dim() != d)
            throw DimensionError("membership generator", g.dim(), d);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < d; ++i)
    {
        std::vector<Rational> r(gens.size());
        for (std::size_t k = 0; k < gens.size(); ++k)
            r[k] = gens[k][i];
        rows.emplace_back(std::move(r));
    }
    std::vector<Rational> rhs = q.entries();
    if (convex)
    {
        rows.emplace_back(std::vector<Rational>(gens.size(), Rational(1)));
        rhs.push_back(1);
    }
    MembershipCertificate cert;
    cert.convex = convex;
    auto res = find_nonnegative_solution(Mat(rows, gens.size()), Vec(rhs));
    if (res.feasible)
    {
        cert.inside = true;
        cert.coefficients = res.solution.entries();
        cert.coefficients.resize(gens.size());
    }
    else
    {
        std::vector<Rational> y = res.farkas.entries();
        if (convex)
        {
            cert.offset = y.back();
            y.pop_back();
        }
        cert.separator = Vec(std::move(y));
    }
    if (!cert.verify(q, gens))
        throw InternalError("membership certificate failed re-verification");
    return cert;
}

}   // namespace detail

/// Membership of q in cone(generators).
inline MembershipCertificate member_cone(const Vec& q, const std::vector<Vec>& generators)
{
    return detail::membership(q, generators, false);
}

inline MembershipCertificate member_cone(const Vec& q, const Cone& c)
{
    if (q.dim() != c.dim())
        throw DimensionError("cone membership", q.dim(), c.dim());
    return detail::membership(q, c.rays(), false);
}

/// Membership of q in conv(points).
inline MembershipCertificate member_convex(const Vec& q, const std::vector<Vec>& points)
{
    return detail::membership(q, points, true);
}

}   // namespace gptlab

#endif
