/**
 * Exact rational vectors and matrices.
 *
 * Everything in gptlab is computed over the rationals with arbitrary
 * precision; there is no floating-point path. Vec and Mat are immutable
 * values: every operation returns a fresh object.
 */

#ifndef GPTLAB_LINALG_HPP
#define GPTLAB_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "error.hpp"

namespace gptlab {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r)
{
    return r.str();
}

/**
 * Parses "p", "-p", "p/q". Returns nullopt on anything else, including a
 * zero denominator.
 */
inline std::optional<Rational> parse_rational(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto digits = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+'))
    {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    auto slash = text.find('/');
    std::string_view num = trim(text.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
    if (!digits(num) || !digits(den))
        return std::nullopt;
    Integer n{std::string(num)};
    Integer d{std::string(den)};
    if (d == 0)
        return std::nullopt;
    Rational r(n, d);
    return negative ? Rational(-r) : r;
}

class Vec
{
    public:
        Vec() = default;
        explicit Vec(std::vector<Rational> entries) : entries_(std::move(entries)) {}
        Vec(std::initializer_list<Rational> entries) : entries_(entries) {}

        static Vec zero(std::size_t dim) { return Vec(std::vector<Rational>(dim)); }

        static Vec basis(std::size_t dim, std::size_t i)
        {
            std::vector<Rational> e(dim);
            e[i] = 1;
            return Vec(std::move(e));
        }

        std::size_t dim() const { return entries_.size(); }
        const Rational& operator[](std::size_t i) const { return entries_[i]; }
        const std::vector<Rational>& entries() const { return entries_; }
        auto begin() const { return entries_.begin(); }
        auto end() const { return entries_.end(); }

        bool is_zero() const
        {
            return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return x == 0; });
        }

        friend Vec operator+(const Vec& a, const Vec& b)
        {
            require_same(a, b, "vector sum");
            std::vector<Rational> out(a.dim());
            for (std::size_t i = 0; i < a.dim(); ++i)
                out[i] = a[i] + b[i];
            return Vec(std::move(out));
        }

        friend Vec operator-(const Vec& a, const Vec& b)
        {
            require_same(a, b, "vector difference");
            std::vector<Rational> out(a.dim());
            for (std::size_t i = 0; i < a.dim(); ++i)
                out[i] = a[i] - b[i];
            return Vec(std::move(out));
        }

        friend Vec operator-(const Vec& a)
        {
            std::vector<Rational> out(a.dim());
            for (std::size_t i = 0; i < a.dim(); ++i)
                out[i] = -a[i];
            return Vec(std::move(out));
        }

        friend Vec operator*(const Rational& s, const Vec& a)
        {
            std::vector<Rational> out(a.dim());
            for (std::size_t i = 0; i < a.dim(); ++i)
                out[i] = s * a[i];
            return Vec(std::move(out));
        }

        friend Vec operator/(const Vec& a, const Rational& s)
        {
            if (s == 0)
                throw PreconditionError("division of a vector by zero");
            return Rational(1 / s) * a;
        }

        friend bool operator==(const Vec& a, const Vec& b) { return a.entries_ == b.entries_; }

        // Lexicographic; used only for deterministic containers.
        friend bool operator<(const Vec& a, const Vec& b) { return a.entries_ < b.entries_; }

        static void require_same(const Vec& a, const Vec& b, const char* what)
        {
            if (a.dim() != b.dim())
                throw DimensionError(what, a.dim(), b.dim());
        }

    private:
        std::vector<Rational> entries_;
};

/// "[a, b, c]"
inline std::string to_string(const Vec& v)
{
    std::string out = "[";
    for (std::size_t i = 0; i < v.dim(); ++i)
    {
        if (i)
            out += ", ";
        out += to_string(v[i]);
    }
    return out + "]";
}

inline Rational inner(const Vec& a, const Vec& b)
{
    Vec::require_same(a, b, "inner product");
    Rational s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        s += a[i] * b[i];
    return s;
}

/// Sum of c[i] * vs[i].
inline Vec combine(const std::vector<Rational>& c, const std::vector<Vec>& vs, std::size_t dim)
{
    if (c.size() != vs.size())
        throw DimensionError("linear combination", c.size(), vs.size());
    std::vector<Rational> out(dim);
    for (std::size_t k = 0; k < vs.size(); ++k)
    {
        if (vs[k].dim() != dim)
            throw DimensionError("linear combination", vs[k].dim(), dim);
        if (c[k] == 0)
            continue;
        for (std::size_t i = 0; i < dim; ++i)
            out[i] += c[k] * vs[k][i];
    }
    return Vec(std::move(out));
}

/// A rectangular matrix stored by rows.
class Mat
{
    public:
        Mat() = default;

        explicit Mat(std::vector<Vec> rows, std::size_t cols = 0) : rows_(std::move(rows)), cols_(cols)
        {
            if (!rows_.empty())
                cols_ = rows_.front().dim();
            for (const Vec& r : rows_)
                if (r.dim() != cols_)
                    throw DimensionError("matrix row", r.dim(), cols_);
        }

        static Mat identity(std::size_t n)
        {
            std::vector<Vec> rows;
            for (std::size_t i = 0; i < n; ++i)
                rows.push_back(Vec::basis(n, i));
            return Mat(std::move(rows));
        }

        std::size_t rows() const { return rows_.size(); }
        std::size_t cols() const { return cols_; }
        bool empty() const { return rows_.empty() || cols_ == 0; }
        const Vec& row(std::size_t i) const { return rows_[i]; }
        const Rational& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
        const std::vector<Vec>& row_vectors() const& { return rows_; }
        std::vector<Vec> row_vectors() && { return std::move(rows_); }

        Mat transpose() const
        {
            std::vector<Vec> out;
            for (std::size_t j = 0; j < cols_; ++j)
            {
                std::vector<Rational> col(rows_.size());
                for (std::size_t i = 0; i < rows_.size(); ++i)
                    col[i] = rows_[i][j];
                out.emplace_back(std::move(col));
            }
            return Mat(std::move(out), rows_.size());
        }

        Vec operator*(const Vec& v) const
        {
            if (v.dim() != cols_)
                throw DimensionError("matrix-vector product", cols_, v.dim());
            std::vector<Rational> out(rows_.size());
            for (std::size_t i = 0; i < rows_.size(); ++i)
                out[i] = inner(rows_[i], v);
            return Vec(std::move(out));
        }

        friend bool operator==(const Mat& a, const Mat& b)
        {
            return a.cols_ == b.cols_ && a.rows_ == b.rows_;
        }

    private:
        std::vector<Vec> rows_;
        std::size_t cols_ = 0;
};

namespace detail {

inline Integer lcm_of_denominators(const Vec& v)
{
    Integer l = 1;
    for (const Rational& x : v)
        l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
    return l;
}

/// Rows scaled to integers (each row by the lcm of its denominators).
inline std::vector<std::vector<Integer>> integer_rows(const Mat& m)
{
    std::vector<std::vector<Integer>> out;
    for (const Vec& r : m.row_vectors())
    {
        Integer l = lcm_of_denominators(r);
        std::vector<Integer> row;
        row.reserve(r.dim());
        for (const Rational& x : r)
            row.push_back(Integer(boost::multiprecision::numerator(x)) * (l / Integer(boost::multiprecision::denominator(x))));
        out.push_back(std::move(row));
    }
    return out;
}

/**
 * Reduced row echelon form over the rationals. Returns the nonzero rows
 * and the pivot column of each.
 */
struct Echelon
{
    std::vector<std::vector<Rational>> rows;
    std::vector<std::size_t> pivots;
};

inline Echelon rref(const Mat& m)
{
    std::vector<std::vector<Rational>> a;
    for (const Vec& r : m.row_vectors())
        a.push_back(r.entries());
    std::size_t n = m.cols();
    Echelon out;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < n && lead < a.size(); ++col)
    {
        std::size_t piv = lead;
        while (piv < a.size() && a[piv][col] == 0)
            ++piv;
        if (piv == a.size())
            continue;
        std::swap(a[piv], a[lead]);
        Rational inv = 1 / a[lead][col];
        for (Rational& x : a[lead])
            x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            if (i == lead || a[i][col] == 0)
                continue;
            Rational f = a[i][col];
            for (std::size_t j = col; j < n; ++j)
                a[i][j] -= f * a[lead][j];
        }
        out.pivots.push_back(col);
        ++lead;
    }
    a.resize(lead);
    out.rows = std::move(a);
    return out;
}

}   // namespace detail

/**
 * Rank by fraction-free (Bareiss) elimination on the integer-scaled rows.
 */
inline std::size_t rank(const Mat& m)
{
    if (m.empty())
        return 0;
    auto a = detail::integer_rows(m);
    std::size_t rows = a.size(), cols = m.cols();
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t col = 0; col < cols && r < rows; ++col)
    {
        std::size_t piv = r;
        while (piv < rows && a[piv][col] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i)
        {
            for (std::size_t j = col + 1; j < cols; ++j)
                a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[r][col];
        ++r;
    }
    return r;
}

inline std::size_t rank(const std::vector<Vec>& vs)
{
    return vs.empty() ? 0 : rank(Mat(vs));
}

/// Same direction, scaled to coprime integers with a positive factor.
inline Vec primitive(const Vec& v)
{
    if (v.is_zero())
        return v;
    Integer l = detail::lcm_of_denominators(v);
    Integer g = 0;
    std::vector<Integer> ints;
    for (const Rational& x : v)
    {
        ints.push_back(Integer(boost::multiprecision::numerator(x)) * (l / Integer(boost::multiprecision::denominator(x))));
        g = boost::multiprecision::gcd(g, ints.back());
    }
    std::vector<Rational> out;
    for (const Integer& x : ints)
        out.emplace_back(x / g);
    return Vec(std::move(out));
}

/// primitive(v), additionally flipped so the first nonzero entry is positive.
/// Only meaningful for lines (null-space directions), not for rays.
inline Vec sign_normalized(const Vec& v)
{
    Vec p = primitive(v);
    for (const Rational& x : p)
    {
        if (x != 0)
            return x < 0 ? -p : p;
    }
    return p;
}

/**
 * Basis of {v : m v = 0}. Each basis vector has a one in its free
 * coordinate and is then scaled by sign_normalized.
 */
inline std::vector<Vec> null_space(const Mat& m)
{
    std::size_t n = m.cols();
    auto ech = detail::rref(m);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : ech.pivots)
        is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < n; ++free)
    {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(n);
        v[free] = 1;
        for (std::size_t i = 0; i < ech.pivots.size(); ++i)
            v[ech.pivots[i]] = -ech.rows[i][free];
        basis.push_back(sign_normalized(Vec(std::move(v))));
    }
    return basis;
}

/// Canonical basis of the row space (the nonzero rows of the rref).
inline std::vector<Vec> row_space(const Mat& m)
{
    std::vector<Vec> out;
    for (auto& r : detail::rref(m).rows)
        out.emplace_back(r);
    return out;
}

/**
 * Every solution of m x = rhs: a particular solution (free variables zero)
 * plus a null-space basis. nullopt when inconsistent.
 */
struct SolutionSet
{
    Vec particular;
    std::vector<Vec> directions;

    bool unique() const { return directions.empty(); }
};

inline std::optional<SolutionSet> solve(const Mat& m, const Vec& rhs)
{
    if (rhs.dim() != m.rows())
        throw DimensionError("linear system right-hand side", rhs.dim(), m.rows());
    std::size_t n = m.cols();
    std::vector<Vec> aug;
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        std::vector<Rational> r = m.row(i).entries();
        r.push_back(rhs[i]);
        aug.emplace_back(std::move(r));
    }
    auto ech = detail::rref(Mat(aug, n + 1));
    if (!ech.pivots.empty() && ech.pivots.back() == n)
        return std::nullopt;
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < ech.pivots.size(); ++i)
        x[ech.pivots[i]] = ech.rows[i][n];
    return SolutionSet{Vec(std::move(x)), null_space(m)};
}

/**
 * All alpha with sum_i alpha_i generators_i = target and sum_i alpha_i = 1.
 */
inline std::optional<SolutionSet> solve_affine(const Vec& target, const std::vector<Vec>& generators)
{
    if (generators.empty())
        throw PreconditionError("solve_affine: no generators");
    std::size_t dim = target.dim();
    std::size_t n = generators.size();
    for (const Vec& g : generators)
        if (g.dim() != dim)
            throw DimensionError("solve_affine generator", g.dim(), dim);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < dim; ++i)
    {
        std::vector<Rational> r(n);
        for (std::size_t k = 0; k < n; ++k)
            r[k] = generators[k][i];
        rows.emplace_back(std::move(r));
    }
    rows.emplace_back(std::vector<Rational>(n, Rational(1)));
    std::vector<Rational> rhs = target.entries();
    rhs.push_back(1);
    auto sol = solve(Mat(rows), Vec(std::move(rhs)));
    if (sol && combine(sol->particular.entries(), generators, dim) != target)
        throw InternalError("solve_affine: particular solution does not reproduce the target");
    return sol;
}

/**
 * Inverse of a square matrix. Throws PreconditionError naming the rank
 * when singular.
 */
inline Mat inverse(const Mat& m)
{
    std::size_t n = m.rows();
    if (m.cols() != n)
        throw DimensionError("inverse of non-square matrix", m.rows(), m.cols());
    std::vector<Vec> aug;
    for (std::size_t i = 0; i < n; ++i)
    {
        std::vector<Rational> r = m.row(i).entries();
        for (std::size_t j = 0; j < n; ++j)
            r.emplace_back(i == j ? 1 : 0);
        aug.emplace_back(std::move(r));
    }
    auto ech = detail::rref(Mat(aug));
    if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1)
        throw PreconditionError("singular matrix: rank " + std::to_string(rank(m)) + " < " + std::to_string(n));
    std::vector<Vec> out;
    for (std::size_t i = 0; i < n; ++i)
        out.emplace_back(std::vector<Rational>(ech.rows[i].begin() + n, ech.rows[i].end()));
    return Mat(out);
}

/**
 * The dual basis {f_i} with <f_i, b_j> = delta_ij. The input must be a
 * square, full-rank family.
 */
inline std::vector<Vec> dual_basis(const std::vector<Vec>& basis)
{
    if (basis.empty())
        throw PreconditionError("dual_basis: empty family");
    std::size_t n = basis.front().dim();
    if (basis.size() != n)
        throw PreconditionError("dual_basis: " + std::to_string(basis.size()) + " vectors in dimension "
                                + std::to_string(n) + " (rank " + std::to_string(rank(basis)) + ")");
    // Rows of B^{-T} are the dual vectors: (B^{-1})^T has columns of B^{-1} as rows.
    Mat inv = inverse(Mat(basis));
    return inv.transpose().row_vectors();
}

/**
 * Coordinates of v in a basis (unique solution of sum c_i basis_i = v).
 */
inline std::optional<Vec> coordinates(const Vec& v, const std::vector<Vec>& basis)
{
    auto sol = solve(Mat(basis).transpose(), v);
    if (!sol || !sol->unique())
        return std::nullopt;
    return sol->particular;
}

/// Sum of outer products a_k b_k^T.
inline Mat outer_sum(const std::vector<Vec>& a, const std::vector<Vec>& b)
{
    if (a.size() != b.size())
        throw DimensionError("outer-product sum", a.size(), b.size());
    if (a.empty())
        return Mat();
    std::size_t r = a.front().dim(), c = b.front().dim();
    std::vector<std::vector<Rational>> m(r, std::vector<Rational>(c));
    for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m[i][j] += a[k][i] * b[k][j];
    std::vector<Vec> rows;
    for (auto& row : m)
        rows.emplace_back(std::move(row));
    return Mat(std::move(rows));
}

}   // namespace gptlab

#endif
