#include <algorithm>

#include <gtest/gtest.h>

#include "gptlab/corpus.hpp"
#include "gptlab/resources.hpp"

using namespace gptlab;

namespace {

const Rational half(1, 2);

std::vector<std::string> labels(const std::vector<Labeled>& xs)
{
    std::vector<std::string> out;
    for (const Labeled& x : xs)
        out.push_back(x.label);
    return out;
}

bool has_vector(const std::vector<Labeled>& xs, const Vec& v)
{
    return std::any_of(xs.begin(), xs.end(), [&](const Labeled& x) { return x.vector == v; });
}

}   // namespace

TEST(Resources, UniformEffectIsClassical)
{
    ResourceVerdict v = classify_bonus(load_example("classical_trit"), {BonusKind::effect, Vec{half, half, half}, "b"});
    EXPECT_EQ(v.classification, ResourceClass::classical);
    EXPECT_FALSE(v.contextual_extension.holds);
    EXPECT_FALSE(v.nonclassical_resource.holds);
    EXPECT_FALSE(v.overcomplete.holds);
    EXPECT_FALSE(v.outside_in_span.holds);
    EXPECT_FALSE(v.nonrefinable_premise);
}

TEST(Resources, SkewEffectIsNonclassical)
{
    Gpt g = load_example("classical_trit");
    BonusElement b{BonusKind::effect, Vec{Rational(3, 2), 0, -half}, "b"};
    ResourceVerdict v = classify_bonus(g, b);
    EXPECT_EQ(v.classification, ResourceClass::nonclassical);
    EXPECT_TRUE(v.contextual_extension.holds);
    EXPECT_TRUE(v.nonclassical_resource.holds);
    EXPECT_TRUE(v.overcomplete.holds);
    EXPECT_TRUE(v.outside_in_span.holds);
    ASSERT_TRUE(v.decomposition);
    EXPECT_TRUE(v.decomposition->verify());
    ASSERT_TRUE(v.exclusion);
    EXPECT_FALSE(v.exclusion->inside);
    EXPECT_TRUE(v.exclusion->verify(b.vector, g.effect_vectors()));
}

TEST(Resources, SkewEffectExtensionStates)
{
    Extension ext = extend_theory(load_example("classical_trit"), {BonusKind::effect, Vec{Rational(3, 2), 0, -half}, "b"});
    const Gpt& t = ext.theory;
    EXPECT_EQ(t.name(), "classical_trit*");
    EXPECT_TRUE(no_restriction_check(t).holds());
    // Oracle: a normalized state is valid iff e1, e2, e3, b and U - b are all in [0, 1] on it.
    for (const Labeled& s : t.states())
    {
        for (const Vec& e : {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}, Vec{Rational(3, 2), 0, -half},
                             Vec{-half, 1, Rational(3, 2)}})
        {
            EXPECT_GE(inner(e, s.vector), 0) << s.label;
            EXPECT_LE(inner(e, s.vector), 1) << s.label;
        }
    }
    EXPECT_TRUE(has_vector(t.states(), Vec{0, 1, 0}));
    EXPECT_TRUE(has_vector(t.states(), Vec{Rational(2, 3), Rational(1, 3), 0}));
    EXPECT_TRUE(has_vector(t.states(), Vec{Rational(3, 4), 0, Rational(1, 4)}));
    EXPECT_TRUE(has_vector(t.states(), Vec{Rational(1, 4), 0, Rational(3, 4)}));
    EXPECT_EQ(labels(ext.expelled), (std::vector<std::string>{"s1", "s3"}));
    EXPECT_TRUE(t.effect("b"));
    EXPECT_TRUE(t.effect("b^c"));
}

TEST(Resources, OutOfSpanEffectRaisesDimension)
{
    ResourceVerdict v = classify_bonus(load_example("classical_bit"), {BonusKind::effect, Vec{0, 0, 1}, "b"});
    EXPECT_EQ(v.classification, ResourceClass::dimension_raising);
    EXPECT_TRUE(v.extension.dimension_raising);
    EXPECT_EQ(v.extension.theory.dim(), 3u);
    EXPECT_FALSE(v.notes.empty());
}

TEST(Resources, PaddedSpanBonusIsRejected)
{
    EXPECT_THROW(extend_theory(load_example("classical_bit"), {BonusKind::effect, Vec{1, 0, 0}, "b"}),
                 PreconditionError);
}

TEST(Resources, OversizedEffectEmptiesTheState)
{
    Gpt g = load_example("classical_trit");
    try
    {
        extend_theory(g, {BonusKind::effect, Vec{2, 2, 2}, "b"});
        FAIL() << "expected EmptyTheoryError";
    }
    catch (const EmptyTheoryError& e)
    {
        // Oracle: U - b = -U, and -U must be a nonnegative combination of effects.
        EXPECT_TRUE(e.evidence().inside);
        for (const Rational& c : e.evidence().coefficients)
            EXPECT_GE(c, 0);
    }
}

TEST(Resources, InteriorStateIsClassical)
{
    ResourceVerdict v
        = classify_bonus(load_example("classical_trit"), {BonusKind::state, Vec{half, Rational(1, 4), Rational(1, 4)}, "b"});
    EXPECT_EQ(v.classification, ResourceClass::classical);
    EXPECT_FALSE(v.outside_in_span.holds);
}

TEST(Resources, ConditionsDisagreeForOuterTritState)
{
    // The extended theory is again a simplex with s1 no longer pure.
    ResourceVerdict v
        = classify_bonus(load_example("classical_trit"), {BonusKind::state, Vec{Rational(3, 2), -half, 0}, "b"});
    EXPECT_EQ(v.classification, ResourceClass::divergent);
    EXPECT_FALSE(v.contextual_extension.holds);
    EXPECT_TRUE(v.outside_in_span.holds);
}

TEST(Resources, RequiresClassicalInput)
{
    EXPECT_THROW(classify_bonus(load_example("rebit_completion"), {BonusKind::effect, Vec{0, 0, 1}, "b"}),
                 PreconditionError);
}
