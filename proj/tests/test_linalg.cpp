#include <gtest/gtest.h>

#include "gptlab/linalg.hpp"
#include "gptlab/lp.hpp"

using namespace gptlab;

namespace {

const Rational half(1, 2);

// Cofactor expansion; independent of the elimination code under test.
Rational det(const std::vector<std::vector<Rational>>& m)
{
    const std::size_t n = m.size();
    if (n == 1)
        return m[0][0];
    Rational total = 0;
    for (std::size_t j = 0; j < n; ++j)
    {
        std::vector<std::vector<Rational>> minor;
        for (std::size_t i = 1; i < n; ++i)
        {
            std::vector<Rational> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j)
                    row.push_back(m[i][k]);
            minor.push_back(row);
        }
        Rational term = m[0][j] * det(minor);
        total += (j % 2 == 0) ? term : Rational(-term);
    }
    return total;
}

}   // namespace

TEST(Rational, ParsesIntegersFractionsAndSigns)
{
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
    EXPECT_EQ(parse_rational(" 7/14 "), half);
    EXPECT_EQ(parse_rational("+2"), Rational(2));
}

TEST(Rational, RejectsMalformedText)
{
    EXPECT_FALSE(parse_rational("1/0"));
    EXPECT_FALSE(parse_rational(""));
    EXPECT_FALSE(parse_rational("1.5"));
    EXPECT_FALSE(parse_rational("a/2"));
    EXPECT_FALSE(parse_rational("1/"));
    EXPECT_FALSE(parse_rational("1//2"));
}

TEST(Rational, PrintsInLowestTerms)
{
    EXPECT_EQ(to_string(Rational(6) / Rational(-4)), "-3/2");
    EXPECT_EQ(to_string(Rational(0)), "0");
    EXPECT_EQ(to_string(Vec{half, 0, -1}), "[1/2, 0, -1]");
}

TEST(Vec, ArithmeticIsExact)
{
    Vec a{half, 1, 0};
    Vec b{half, -1, 2};
    EXPECT_EQ(a + b, (Vec{1, 0, 2}));
    EXPECT_EQ(a - b, (Vec{0, 2, -2}));
    EXPECT_EQ(Rational(2) * a, (Vec{1, 2, 0}));
    EXPECT_EQ(b / 2, (Vec{Rational(1, 4), -half, 1}));
    EXPECT_EQ(inner(a, b), Rational(1, 4) - 1);
}

TEST(Vec, DimensionMismatchThrows)
{
    EXPECT_THROW(inner(Vec{1, 2}, Vec{1, 2, 3}), DimensionError);
    EXPECT_THROW((Vec{1} + Vec{1, 2}), DimensionError);
}

TEST(Rank, RebitTableHasRankThree)
{
    std::vector<std::vector<Rational>> t{{1, 0, half, half}, {0, 1, half, half}, {half, half, 1, 0}, {half, half, 0, 1}};
    std::vector<Vec> rows;
    for (const auto& r : t)
        rows.emplace_back(r);
    // Oracle: vanishing determinant and a nonzero leading 3x3 minor.
    EXPECT_EQ(det(t), 0);
    EXPECT_NE(det({{1, 0, half}, {0, 1, half}, {half, half, 1}}), 0);
    EXPECT_EQ(rank(Mat(rows)), 3u);
}

TEST(Rank, ZeroAndEmptyMatrices)
{
    EXPECT_EQ(rank(Mat(std::vector<Vec>{Vec::zero(3), Vec::zero(3)})), 0u);
    EXPECT_EQ(rank(std::vector<Vec>{}), 0u);
    EXPECT_EQ(rank(Mat::identity(5)), 5u);
}

TEST(NullSpace, IndicatorRowsAnnihilateAlternatingVector)
{
    Mat z(std::vector<Vec>{{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}});
    std::vector<Vec> ns = null_space(z);
    ASSERT_EQ(ns.size(), 1u);
    Vec expected{1, -1, -1, 1};
    EXPECT_EQ(primitive(ns[0]), expected);
    for (const Vec& row : z.row_vectors())
        EXPECT_EQ(inner(row, expected), 0);
}

TEST(NullSpace, FullRankHasNone)
{
    EXPECT_TRUE(null_space(Mat::identity(4)).empty());
}

TEST(Primitive, ScalesToCoprimeIntegersKeepingDirection)
{
    EXPECT_EQ(primitive(Vec{half, half, half}), (Vec{1, 1, 1}));
    EXPECT_EQ(primitive(Vec{-Rational(2, 3), Rational(4, 3)}), (Vec{-1, 2}));
    EXPECT_EQ(sign_normalized(Vec{0, -2, 4}), (Vec{0, 1, -2}));
}

TEST(Solve, UniqueSystem)
{
    Mat a(std::vector<Vec>{{2, 1}, {1, 3}});
    auto s = solve(a, Vec{3, 5});
    ASSERT_TRUE(s);
    EXPECT_TRUE(s->unique());
    EXPECT_EQ(s->particular, (Vec{Rational(4, 5), Rational(7, 5)}));
}

TEST(Solve, UnderdeterminedSystemExposesDirections)
{
    Mat a(std::vector<Vec>{{1, 1, 1}});
    auto s = solve(a, Vec{1});
    ASSERT_TRUE(s);
    EXPECT_EQ(s->directions.size(), 2u);
    EXPECT_EQ(a * s->particular, Vec{1});
    for (const Vec& d : s->directions)
        EXPECT_EQ(a * d, Vec{0});
}

TEST(Solve, InconsistentSystem)
{
    Mat a(std::vector<Vec>{{1, 1}, {2, 2}});
    EXPECT_FALSE(solve(a, Vec{1, 3}));
}

TEST(SolveAffine, CoefficientsSumToOne)
{
    // (0,0) = (1,0) + (0,1) - (1,1) as an affine combination.
    auto s = solve_affine(Vec{0, 0}, {Vec{1, 0}, Vec{0, 1}, Vec{1, 1}});
    ASSERT_TRUE(s);
    EXPECT_EQ(s->particular, (Vec{1, 1, -1}));
}

TEST(Inverse, ProductIsIdentity)
{
    Mat a(std::vector<Vec>{{1, 2, 0}, {0, 1, half}, {3, 0, 1}});
    Mat inv = inverse(a);
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < 3; ++j)
    {
        std::vector<Rational> c(3);
        for (std::size_t i = 0; i < 3; ++i)
            c[i] = inv(i, j);
        cols.emplace_back(c);
    }
    for (std::size_t j = 0; j < 3; ++j)
        EXPECT_EQ(a * cols[j], Vec::basis(3, j));
}

TEST(Inverse, SingularThrows)
{
    EXPECT_THROW(inverse(Mat(std::vector<Vec>{{1, 2}, {2, 4}})), PreconditionError);
}

TEST(DualBasis, BiorthogonalToInput)
{
    std::vector<Vec> b{{1, 0, 0}, {1, 1, 0}, {1, 1, 1}};
    std::vector<Vec> f = dual_basis(b);
    EXPECT_EQ(f, (std::vector<Vec>{{1, -1, 0}, {0, 1, -1}, {0, 0, 1}}));
    EXPECT_EQ(outer_sum(b, f), Mat::identity(3));
}

TEST(Coordinates, InBasisAndOutsideSpan)
{
    std::vector<Vec> b{{1, 1, 0}, {0, 1, 1}};
    EXPECT_EQ(coordinates(Vec{1, 2, 1}, b), (Vec{1, 1}));
    EXPECT_FALSE(coordinates(Vec{1, 0, 0}, b));
}

TEST(Simplex, FeasibleSystemReturnsVerifiedSolution)
{
    Mat a(std::vector<Vec>{{1, 1, 0}, {0, 1, 1}});
    Vec b{1, 1};
    FeasibilityResult r = find_nonnegative_solution(a, b);
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(a * r.solution, b);
    for (const Rational& x : r.solution)
        EXPECT_GE(x, 0);
}

TEST(Simplex, InfeasibleSystemReturnsFarkasVector)
{
    // x1 + x2 = -1 has no nonnegative solution.
    Mat a(std::vector<Vec>{{1, 1}});
    FeasibilityResult r = find_nonnegative_solution(a, Vec{-1});
    ASSERT_FALSE(r.feasible);
    EXPECT_TRUE(is_farkas_certificate(a, Vec{-1}, r.farkas));
    EXPECT_FALSE(is_farkas_certificate(a, Vec{-1}, Vec{-1}));
}

TEST(Simplex, DegenerateRowsDoNotCycle)
{
    Mat a(std::vector<Vec>{{1, -1, 0, 0}, {1, -1, 0, 0}, {0, 0, 1, -1}, {1, 0, 1, 0}});
    FeasibilityResult r = find_nonnegative_solution(a, Vec{0, 0, 0, 2});
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(a * r.solution, (Vec{0, 0, 0, 2}));
}

TEST(StrictlyPositiveFunctional, ExistsForPointedSetsOnly)
{
    auto w = strictly_positive_functional({Vec{1, 0}, Vec{1, 1}, Vec{0, 1}}, 2);
    ASSERT_TRUE(w);
    EXPECT_GE(inner(*w, Vec{1, 0}), 1);
    EXPECT_GE(inner(*w, Vec{0, 1}), 1);
    EXPECT_FALSE(strictly_positive_functional({Vec{1, 0}, Vec{-1, 0}}, 2));
}
