/**
 * Resource classification of a single bonus effect or state against a
 * classical (simplicial) theory obeying the no-restriction hypothesis.
 */

#ifndef GPTLAB_RESOURCES_HPP
#define GPTLAB_RESOURCES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cone.hpp"
#include "contextuality.hpp"
#include "gpt.hpp"
#include "linalg.hpp"

namespace gptlab {

enum class BonusKind
{
    effect,
    state
};

inline const char* to_string(BonusKind k)
{
    return k == BonusKind::effect ? "effect" : "state";
}

struct BonusElement
{
    BonusKind kind = BonusKind::effect;
    Vec vector;
    std::string label;

    friend bool operator==(const BonusElement&, const BonusElement&) = default;
};

/// Raised when a bonus effect leaves no normalized state.
class EmptyTheoryError : public PreconditionError
{
    public:
        EmptyTheoryError(const std::string& what, MembershipCertificate evidence)
            : PreconditionError(what), evidence_(std::move(evidence))
        {
        }

        /// -U written as a nonnegative combination of the extended effects.
        const MembershipCertificate& evidence() const { return evidence_; }

    private:
        MembershipCertificate evidence_;
};

struct Extension
{
    Gpt theory;
    std::vector<Labeled> expelled;   // old generators that the bonus element invalidates
    bool dimension_raising = false;
};

namespace detail {

inline Vec pad(const Vec& v, std::size_t dim)
{
    std::vector<Rational> e = v.entries();
    e.resize(dim);
    return Vec(std::move(e));
}

inline std::vector<Labeled> pad(const std::vector<Labeled>& xs, std::size_t dim)
{
    std::vector<Labeled> out;
    for (const Labeled& x : xs)
        out.push_back({x.label, pad(x.vector, dim)});
    return out;
}

inline void require_classical(const Gpt& g, const char* op)
{
    require_theory(g, op);
    if (!classify(g).noncontextual)
        throw PreconditionError(std::string(op) + ": free theory '" + g.name()
                                + "' is not classical; run classify on it first");
}

inline void add_unique(std::vector<Labeled>& xs, Labeled x)
{
    if (std::none_of(xs.begin(), xs.end(), [&](const Labeled& k) { return k.vector == x.vector; }))
        xs.push_back(std::move(x));
}

}   // namespace detail

/**
 * The theory with the bonus element adjoined and the other side
 * recomputed as the no-restriction dual. A bonus effect brings its
 * complement U - b along, so the result is closed under complements. A
 * bonus vector of higher dimension than the theory zero-pads the theory
 * and must leave its span.
 */
inline Extension extend_theory(const Gpt& g, const BonusElement& b)
{
    detail::require_classical(g, "extend_theory");
    if (b.vector.is_zero())
        throw PreconditionError("bonus " + std::string(to_string(b.kind)) + " '" + b.label + "' is the zero vector");
    const std::size_t d = b.vector.dim();
    if (d < g.dim())
        throw DimensionError("bonus " + std::string(to_string(b.kind)) + " '" + b.label + "'", d, g.dim());

    Extension ext{g, {}, d > g.dim()};
    const Vec unit = detail::pad(g.unit(), d);
    std::vector<Labeled> effects = detail::pad(g.effects(), d);
    std::vector<Labeled> states = detail::pad(g.states(), d);
    if (ext.dimension_raising)
    {
        std::vector<Vec> span = b.kind == BonusKind::effect ? vectors_of(effects) : vectors_of(states);
        span.push_back(b.vector);
        if (rank(span) == g.dim())
            throw PreconditionError("bonus " + std::string(to_string(b.kind)) + " '" + b.label
                                    + "' lies in the span of the zero-padded theory; give it in dimension "
                                    + std::to_string(g.dim()));
    }

    std::vector<Pvvm> pvvms = g.pvvms();
    if (b.kind == BonusKind::effect)
    {
        const std::string complement = b.label + "^c";
        detail::add_unique(effects, {b.label, b.vector});
        detail::add_unique(effects, {complement, unit - b.vector});
        Cone c = Cone::from_rays(d, vectors_of(effects));
        auto maximal = maximal_state_vertices(c, unit);
        if (!maximal)
        {
            MembershipCertificate ev = member_cone(-unit, vectors_of(effects));
            throw EmptyTheoryError("bonus effect '" + b.label + "' = " + to_string(b.vector)
                                       + " leaves no normalized state",
                                   ev);
        }
        for (const Labeled& s : states)
        {
            Rational p = inner(b.vector, s.vector);
            if (p < 0 || p > 1)
                ext.expelled.push_back(s);
        }
        states.clear();
        for (std::size_t i = 0; i < maximal->size(); ++i)
            states.push_back({detail::label_for((*maximal)[i], detail::pad(g.states(), d), "x", i), (*maximal)[i]});
        bool have_b = std::any_of(effects.begin(), effects.end(), [&](const Labeled& e) { return e.label == b.label; });
        bool have_c
            = std::any_of(effects.begin(), effects.end(), [&](const Labeled& e) { return e.label == complement; });
        if (have_b && have_c)
            pvvms.push_back({b.label + "?", {b.label, complement}});
    }
    else
    {
        if (inner(unit, b.vector) != 1)
            throw PreconditionError("bonus state '" + b.label + "' is not normalized: <U, state> = "
                                    + to_string(inner(unit, b.vector)));
        detail::add_unique(states, {b.label, b.vector});
        for (const Labeled& e : effects)
        {
            Rational p = inner(e.vector, b.vector);
            if (p < 0 || p > 1)
                ext.expelled.push_back(e);
        }
        Gpt draft(g.name(), d, unit, effects, states, false, {});
        effects = complete(draft, CompletionMode::fix_states).effects();
        std::erase_if(pvvms, [&](const Pvvm& p) {
            return std::any_of(p.outcomes.begin(), p.outcomes.end(), [&](const std::string& o) {
                return std::none_of(effects.begin(), effects.end(), [&](const Labeled& e) { return e.label == o; });
            });
        });
    }

    for (Pvvm& p : pvvms)
    {
        Vec total = Vec::zero(d);
        for (const std::string& o : p.outcomes)
            for (const Labeled& e : effects)
                if (e.label == o)
                    total = total + e.vector;
        if (total != unit)
            p.outcomes.clear();
    }
    std::erase_if(pvvms, [](const Pvvm& p) { return p.outcomes.empty(); });

    Gpt draft(g.name() + "*", d, unit, effects, states, false, pvvms);
    ValidationReport rep = validate(draft);
    if (!rep.ok())
        throw PreconditionError("extended theory does not validate: " + rep.violations.front().invariant + ": "
                                + rep.violations.front().witness);
    bool holds = no_restriction_check(draft).holds();
    if (!holds)
        throw InternalError("extended theory violates the no-restriction hypothesis");
    ext.theory = Gpt(draft.name(), d, unit, effects, states, true, pvvms);
    return ext;
}

enum class ResourceClass
{
    classical,
    nonclassical,
    dimension_raising,
    divergent   // conditions disagree: a counterexample to the equivalence
};

inline const char* to_string(ResourceClass c)
{
    switch (c)
    {
        case ResourceClass::classical:
            return "classical";
        case ResourceClass::nonclassical:
            return "nonclassical";
        case ResourceClass::dimension_raising:
            return "dimension-raising";
        case ResourceClass::divergent:
            return "divergent";
    }
    return "?";
}

struct Condition
{
    bool holds = false;
    std::string evidence;
};

struct ResourceVerdict
{
    ResourceClass classification = ResourceClass::classical;
    Extension extension;
    Condition contextual_extension;    // (i) the extended theory is contextual
    Condition nonclassical_resource;   // (ii) identical to (i) by definition
    Condition overcomplete;            // (iii) the extended extremal set is nonconvexly overcomplete
    Condition outside_in_span;         // (iv) b in the span and outside the old set
    bool nonrefinable_premise = true;  // b spans an extreme ray of the extended cone
    std::optional<NonUniqueDecomposition> decomposition;
    std::optional<MembershipCertificate> exclusion;   // b, or U - b, not in the old set
    std::vector<std::string> notes;
};

/**
 * Evaluates the four resource conditions independently and classifies
 * the bonus element by their agreement.
 */
inline ResourceVerdict classify_bonus(const Gpt& g, const BonusElement& b)
{
    ResourceVerdict v{ResourceClass::classical, extend_theory(g, b), {}, {}, {}, {}, true, {}, {}, {}};
    const Gpt& ext = v.extension.theory;
    const bool effect = b.kind == BonusKind::effect;

    ContextualityVerdict cv = classify(ext);
    v.contextual_extension.holds = !cv.noncontextual;
    if (cv.noncontextual)
        v.contextual_extension.evidence = "extended theory has a Dirac model with "
                                          + std::to_string(cv.model->ontic_size()) + " ontic states";
    else
        v.contextual_extension.evidence = std::to_string(cv.pure.size()) + " pure states and "
                                          + std::to_string(cv.nonrefinable.size())
                                          + " nonrefinable effects in dimension " + std::to_string(ext.dim());
    v.nonclassical_resource = {v.contextual_extension.holds, "by definition equal to condition (i)"};

    std::vector<Labeled> extremal = effect ? cv.nonrefinable : cv.pure;
    std::optional<Vec> normalizer = effect ? strictly_positive_functional(vectors_of(extremal), ext.dim())
                                           : std::optional<Vec>(ext.unit());
    if (normalizer)
        v.decomposition = nonunique_decomposition(extremal, *normalizer);
    v.overcomplete.holds = v.decomposition.has_value();
    v.overcomplete.evidence = v.decomposition
                                  ? to_string(v.decomposition->point) + " has two convex decompositions over the "
                                        + (effect ? "nonrefinable effects" : "pure states")
                                  : std::to_string(extremal.size()) + " linearly independent "
                                        + (effect ? "nonrefinable effects" : "pure states");

    if (v.extension.dimension_raising)
    {
        v.outside_in_span = {false, "bonus vector leaves the span of the free theory"};
        v.classification = ResourceClass::dimension_raising;
        v.notes.push_back("the extended space has dimension " + std::to_string(ext.dim()) + " > "
                          + std::to_string(g.dim())
                          + "; the resource equivalence presupposes an unchanged space and does not apply");
    }
    else
    {
        if (effect)
        {
            MembershipCertificate lo = member_cone(b.vector, g.effect_vectors());
            MembershipCertificate hi = member_cone(g.unit() - b.vector, g.effect_vectors());
            v.outside_in_span.holds = !lo.inside || !hi.inside;
            if (!lo.inside)
            {
                v.exclusion = lo;
                v.outside_in_span.evidence = "b is outside the effect cone";
            }
            else if (!hi.inside)
            {
                v.exclusion = hi;
                v.outside_in_span.evidence = "U - b is outside the effect cone";
            }
            else
                v.outside_in_span.evidence = "b lies in the effect set [0, U]";
        }
        else
        {
            MembershipCertificate m = member_convex(b.vector, g.state_vectors());
            v.outside_in_span.holds = !m.inside;
            v.exclusion = m;
            v.outside_in_span.evidence = m.inside ? "the state lies in the state set" : "the state is outside the state set";
        }

        bool i = v.contextual_extension.holds, iii = v.overcomplete.holds, iv = v.outside_in_span.holds;
        if (i && iii && iv)
            v.classification = ResourceClass::nonclassical;
        else if (!i && !iii && !iv)
            v.classification = ResourceClass::classical;
        else
        {
            v.classification = ResourceClass::divergent;
            v.notes.push_back(std::string("conditions disagree: (i) ") + (i ? "true" : "false") + ", (iii) "
                              + (iii ? "true" : "false") + ", (iv) " + (iv ? "true" : "false"));
        }
    }

    if (effect)
    {
        Vec pb = primitive(b.vector);
        const auto& rays = effect_cone(ext).rays();
        v.nonrefinable_premise = std::find(rays.begin(), rays.end(), pb) != rays.end();
    }
    else
    {
        std::vector<Labeled> pure = pure_states(ext);
        v.nonrefinable_premise
            = std::any_of(pure.begin(), pure.end(), [&](const Labeled& s) { return s.vector == b.vector; });
    }
    if (!v.nonrefinable_premise)
        v.notes.push_back(std::string("warning: the bonus ") + to_string(b.kind)
                          + " is not extremal in the extended theory, so it is not a single nonrefinable element");
    return v;
}

}   // namespace gptlab

#endif
