/**
 * General probabilistic theories over R^dim: a unit effect, effect and
 * state generators, the bilinear probability rule, and the geometric
 * operations built on it (no-restriction check, completion, pure states,
 * nonrefinable effects, probability tables).
 */

#ifndef GPTLAB_GPT_HPP
#define GPTLAB_GPT_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cone.hpp"
#include "linalg.hpp"

namespace gptlab {

/// A vector with the name it carries in reports (eta5, e3, ...).
struct Labeled
{
    std::string label;
    Vec vector;

    friend bool operator==(const Labeled&, const Labeled&) = default;
};

inline std::vector<Vec> vectors_of(const std::vector<Labeled>& xs)
{
    std::vector<Vec> out;
    out.reserve(xs.size());
    for (const Labeled& x : xs)
        out.push_back(x.vector);
    return out;
}

/// A measurement: effect labels, one per outcome. The effects must sum to the unit.
struct Pvvm
{
    std::string label;
    std::vector<std::string> outcomes;

    friend bool operator==(const Pvvm&, const Pvvm&) = default;
};

class Gpt
{
    public:
        Gpt(std::string name, std::size_t dim, Vec unit, std::vector<Labeled> effects, std::vector<Labeled> states,
            bool asserts_no_restriction, std::vector<Pvvm> pvvms = {})
            : name_(std::move(name)), dim_(dim), unit_(std::move(unit)), effects_(std::move(effects)),
              states_(std::move(states)), asserts_no_restriction_(asserts_no_restriction), pvvms_(std::move(pvvms))
        {
            if (dim_ == 0)
                throw InputError("theory dimension must be at least 1");
            if (unit_.dim() != dim_)
                throw DimensionError("unit element", unit_.dim(), dim_);
            std::set<std::string> seen;
            auto check = [&](const std::vector<Labeled>& xs, const char* what) {
                for (const Labeled& x : xs)
                {
                    if (x.vector.dim() != dim_)
                        throw DimensionError(std::string(what) + " '" + x.label + "'", x.vector.dim(), dim_);
                    if (!seen.insert(x.label).second)
                        throw InputError("duplicate label '" + x.label + "'");
                }
            };
            check(effects_, "effect");
            check(states_, "state");
            for (const Pvvm& p : pvvms_)
                for (const std::string& o : p.outcomes)
                    if (!effect(o))
                        throw InputError("measurement '" + p.label + "' names unknown effect '" + o + "'");
        }

        const std::string& name() const { return name_; }
        std::size_t dim() const { return dim_; }
        const Vec& unit() const { return unit_; }
        const std::vector<Labeled>& effects() const { return effects_; }
        const std::vector<Labeled>& states() const { return states_; }
        bool asserts_no_restriction() const { return asserts_no_restriction_; }
        const std::vector<Pvvm>& pvvms() const { return pvvms_; }

        std::vector<Vec> effect_vectors() const { return vectors_of(effects_); }
        std::vector<Vec> state_vectors() const { return vectors_of(states_); }

        std::optional<Vec> effect(const std::string& label) const
        {
            for (const Labeled& e : effects_)
                if (e.label == label)
                    return e.vector;
            return std::nullopt;
        }

        friend bool operator==(const Gpt&, const Gpt&) = default;

    private:
        std::string name_;
        std::size_t dim_;
        Vec unit_;
        std::vector<Labeled> effects_;
        std::vector<Labeled> states_;
        bool asserts_no_restriction_;
        std::vector<Pvvm> pvvms_;
};

/// <e, s>, which must be a probability.
inline Rational probability(const Vec& e, const Vec& s)
{
    Rational p = inner(e, s);
    if (p < 0 || p > 1)
        throw ConsistencyError("probability " + to_string(p) + " outside [0,1] for effect " + to_string(e)
                               + " on state " + to_string(s));
    return p;
}

inline Rational probability(const Labeled& e, const Labeled& s)
{
    Rational p = inner(e.vector, s.vector);
    if (p < 0 || p > 1)
        throw ConsistencyError("probability " + to_string(p) + " outside [0,1] for effect '" + e.label
                               + "' on state '" + s.label + "'");
    return p;
}

inline Cone state_cone(const Gpt& g)
{
    return Cone::from_rays(g.dim(), g.state_vectors());
}

inline Cone effect_cone(const Gpt& g)
{
    return Cone::from_rays(g.dim(), g.effect_vectors());
}

struct Violation
{
    std::string invariant;
    std::string witness;
    std::string subject;   // label of the offending generator or measurement, if any
};

struct ValidationReport
{
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

/**
 * Checks normalization, probability ranges, complements of effects, the
 * spanning assumptions, and that every measurement sums to the unit.
 */
inline ValidationReport validate(const Gpt& g)
{
    ValidationReport rep;
    for (const Labeled& s : g.states())
    {
        Rational n = inner(g.unit(), s.vector);
        if (n != 1)
            rep.violations.push_back({"normalization", "<U, " + s.label + "> = " + to_string(n), s.label});
    }
    for (const Labeled& e : g.effects())
    {
        for (const Labeled& s : g.states())
        {
            Rational p = inner(e.vector, s.vector);
            if (p < 0 || p > 1)
                rep.violations.push_back(
                    {"probability-range", "<" + e.label + ", " + s.label + "> = " + to_string(p), e.label});
        }
    }
    std::vector<Vec> ev = g.effect_vectors();
    for (const Labeled& e : g.effects())
    {
        if (!member_cone(g.unit() - e.vector, ev).inside)
            rep.violations.push_back({"complement", "U - " + e.label + " = " + to_string(g.unit() - e.vector)
                                                        + " is not in the effect cone",
                                      e.label});
    }
    if (rank(ev) != g.dim())
        rep.violations.push_back({"effects-span", "rank of effects " + std::to_string(rank(ev)) + " < "
                                                      + std::to_string(g.dim()), {}});
    std::vector<Vec> sv = g.state_vectors();
    if (rank(sv) != g.dim())
        rep.violations.push_back({"states-span", "rank of states " + std::to_string(rank(sv)) + " < "
                                                     + std::to_string(g.dim()), {}});
    for (const Pvvm& p : g.pvvms())
    {
        Vec total = Vec::zero(g.dim());
        for (const std::string& o : p.outcomes)
            total = total + *g.effect(o);
        if (total != g.unit())
            rep.violations.push_back({"measurement-sum", p.label + " sums to " + to_string(total), p.label});
    }
    return rep;
}

/**
 * Vertices of { rho : <e, rho> >= 0 for all effects, <U, rho> = 1 }, in
 * canonical ray order. nullopt when that set is unbounded (some dual ray
 * has <U, h> <= 0) or empty.
 */
inline std::optional<std::vector<Vec>> maximal_state_vertices(const Cone& effects, const Vec& unit)
{
    Cone dual = dual_cone(effects);
    std::vector<Vec> out;
    for (const Vec& h : dual.rays())
    {
        Rational u = inner(unit, h);
        if (u <= 0)
            return std::nullopt;
        out.push_back(h / u);
    }
    if (out.empty())
        return std::nullopt;
    return out;
}

/// Whether e lies in the order interval [0, U] of the effect cone.
inline bool in_effect_set(const Gpt& g, const Vec& e)
{
    std::vector<Vec> ev = g.effect_vectors();
    return member_cone(e, ev).inside && member_cone(g.unit() - e, ev).inside;
}

struct NoRestrictionReport
{
    bool states_complete = false;
    bool effects_complete = false;
    bool bounded = true;
    std::vector<Vec> missing_states;    // vertices of the maximal state set outside conv(states)
    std::vector<Vec> missing_effects;   // elements of the dual effect interval outside the effect set
    bool assertion_inconsistent = false;

    bool holds() const { return states_complete && effects_complete; }
};

/**
 * Compares the state set with the normalized dual of the effect cone, and
 * the effect set with the dual order interval of the state cone.
 */
inline NoRestrictionReport no_restriction_check(const Gpt& g)
{
    NoRestrictionReport rep;
    std::vector<Vec> sv = g.state_vectors();
    Cone econe = effect_cone(g);
    auto maximal = maximal_state_vertices(econe, g.unit());
    if (!maximal)
    {
        rep.bounded = false;
        rep.states_complete = false;
    }
    else
    {
        for (const Vec& v : *maximal)
            if (!member_convex(v, sv).inside)
                rep.missing_states.push_back(v);
        rep.states_complete = rep.missing_states.empty();
    }

    Cone scone = state_cone(g);
    std::vector<Vec> ev = g.effect_vectors();
    for (const Vec& h : dual_cone(scone).rays())
    {
        if (member_cone(h, ev).inside)
            continue;
        Rational top = 0;
        for (const Vec& s : sv)
            top = std::max(top, inner(h, s));
        rep.missing_effects.push_back(top > 0 ? Vec(h / top) : h);
    }
    rep.effects_complete = rep.missing_effects.empty();
    rep.assertion_inconsistent = g.asserts_no_restriction() && !rep.holds();
    return rep;
}

namespace detail {

inline std::string label_for(const Vec& v, const std::vector<Labeled>& known, const std::string& prefix,
                             std::size_t index)
{
    for (const Labeled& k : known)
        if (k.vector == v)
            return k.label;
    return prefix + std::to_string(index + 1);
}

/// Largest t with U - t r in the cone, from the facet list. nullopt if unbounded.
inline std::optional<Rational> ray_scale(const Cone& c, const Vec& unit, const Vec& r)
{
    std::optional<Rational> best;
    for (const Vec& n : c.facets())
    {
        Rational nr = inner(n, r);
        if (nr <= 0)
            continue;
        Rational t = inner(n, unit) / nr;
        if (!best || t < *best)
            best = t;
    }
    return best;
}

}   // namespace detail

enum class CompletionMode
{
    fix_effects,   // keep the effects, states become the full dual
    fix_states     // keep the states, effects become the full dual interval
};

/**
 * Extends a subtheory to a theory obeying the no-restriction hypothesis
 * by dualizing one side. Newly created generators are labeled with the
 * prefix "c" unless they coincide with an existing generator.
 */
inline Gpt complete(const Gpt& g, CompletionMode mode)
{
    std::vector<Labeled> effects = g.effects();
    std::vector<Labeled> states = g.states();
    std::vector<Pvvm> pvvms = g.pvvms();
    if (mode == CompletionMode::fix_effects)
    {
        auto maximal = maximal_state_vertices(effect_cone(g), g.unit());
        if (!maximal)
            throw PreconditionError("complete: the dual of the effect cone yields an unbounded or empty state set");
        states.clear();
        for (std::size_t i = 0; i < maximal->size(); ++i)
            states.push_back({detail::label_for((*maximal)[i], g.states(), "c", i), (*maximal)[i]});
    }
    else
    {
        Cone dual = dual_cone(state_cone(g));
        effects.clear();
        for (std::size_t i = 0; i < dual.rays().size(); ++i)
        {
            const Vec& h = dual.rays()[i];
            auto t = detail::ray_scale(dual, g.unit(), h);
            if (!t || *t <= 0)
                throw PreconditionError("complete: unit is not interior to the dual of the state cone");
            Vec e = *t * h;
            effects.push_back({detail::label_for(e, g.effects(), "c", i), e});
        }
        // Measurements referring to dropped effects no longer apply.
        std::erase_if(pvvms, [&](const Pvvm& p) {
            return std::any_of(p.outcomes.begin(), p.outcomes.end(), [&](const std::string& o) {
                return std::none_of(effects.begin(), effects.end(), [&](const Labeled& e) { return e.label == o; });
            });
        });
    }
    Gpt draft(g.name() + (mode == CompletionMode::fix_effects ? "+states" : "+effects"), g.dim(), g.unit(),
              effects, states, false, pvvms);
    bool holds = no_restriction_check(draft).holds();
    return Gpt(draft.name(), draft.dim(), draft.unit(), draft.effects(), draft.states(), holds, draft.pvvms());
}

struct ProbabilityTable
{
    std::vector<std::string> row_labels;
    std::vector<std::string> column_labels;
    Mat entries;
};

/// Entry (i, j) is the probability of effect j on state i.
inline ProbabilityTable probability_table(const std::vector<Labeled>& states, const std::vector<Labeled>& effects)
{
    ProbabilityTable t;
    std::vector<Vec> rows;
    for (const Labeled& s : states)
    {
        t.row_labels.push_back(s.label);
        std::vector<Rational> row;
        for (const Labeled& e : effects)
            row.push_back(probability(e, s));
        rows.emplace_back(std::move(row));
    }
    for (const Labeled& e : effects)
        t.column_labels.push_back(e.label);
    t.entries = Mat(std::move(rows), effects.size());
    return t;
}

inline ProbabilityTable probability_table(const Gpt& g)
{
    return probability_table(g.states(), g.effects());
}

/// Lower bound on the dimension of any model reproducing the table.
inline std::size_t min_model_dimension(const ProbabilityTable& t)
{
    return rank(t.entries);
}

/**
 * Extreme points of conv(states): the generators that are not convex
 * combinations of the remaining ones. Exact duplicates keep their first
 * occurrence.
 */
inline std::vector<Labeled> pure_states(const Gpt& g)
{
    std::vector<Labeled> kept;
    for (const Labeled& s : g.states())
        if (std::none_of(kept.begin(), kept.end(), [&](const Labeled& k) { return k.vector == s.vector; }))
            kept.push_back(s);
    for (std::size_t i = 0; i < kept.size();)
    {
        std::vector<Vec> others;
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i)
                others.push_back(kept[j].vector);
        if (!others.empty() && member_convex(kept[i].vector, others).inside)
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    return kept;
}

/**
 * Vertices of the effect set cone(E) ∩ (U - cone(E)), including zero and
 * the unit.
 */
inline std::vector<Vec> effect_set_vertices(const Gpt& g)
{
    Cone c = effect_cone(g);
    const std::size_t d = g.dim();
    // Homogenize: (e, t) with <n, e> >= 0, t<n, U> - <n, e> >= 0, t >= 0.
    std::vector<Vec> normals;
    for (const Vec& n : c.facets())
    {
        std::vector<Rational> lo = n.entries();
        lo.push_back(0);
        normals.emplace_back(std::move(lo));
        std::vector<Rational> hi = (-n).entries();
        hi.push_back(inner(n, g.unit()));
        normals.emplace_back(std::move(hi));
    }
    normals.push_back(Vec::basis(d + 1, d));
    std::vector<Vec> out;
    for (const Vec& r : halfspace_generators(d + 1, normals))
    {
        if (r[d] <= 0)
            throw ConsistencyError("effect set is unbounded");
        std::vector<Rational> e(r.begin(), r.end() - 1);
        out.push_back(Vec(std::move(e)) / r[d]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

/// Some extreme ray rho of c, not proportional to v, with v - eps rho in c for an eps > 0.
inline bool refinable(const Cone& c, const Vec& v)
{
    Vec pv = primitive(v);
    for (const Vec& rho : c.rays())
    {
        if (rho == pv)
            continue;
        auto eps = ray_scale(c, v, rho);
        if (!eps || *eps > 0)
            return true;
    }
    return false;
}

}   // namespace detail

/**
 * The nonrefinable (atomic) effects: on every extreme ray of the effect
 * cone, the largest multiple that still lies in [0, U]. Cross-checked
 * against the vertices of the effect set that admit no split into two
 * non-proportional nonzero effects.
 */
inline std::vector<Labeled> nonrefinable_effects(const Gpt& g)
{
    Cone c = effect_cone(g);
    if (!c.pointed())
        throw ConsistencyError("effect cone contains a line; the effect set is unbounded");
    std::vector<Labeled> out;
    std::vector<Vec> by_ray;
    for (std::size_t i = 0; i < c.rays().size(); ++i)
    {
        const Vec& rho = c.rays()[i];
        auto t = detail::ray_scale(c, g.unit(), rho);
        if (!t)
            throw ConsistencyError("effect set is unbounded along " + to_string(rho));
        if (*t == 0)
            continue;
        Vec e = *t * rho;
        by_ray.push_back(e);
        out.push_back({detail::label_for(e, g.effects(), "a", i), e});
    }

    // Known generators keep their input order; new ones follow in ray order.
    auto position = [&](const Labeled& x) {
        for (std::size_t i = 0; i < g.effects().size(); ++i)
            if (g.effects()[i].vector == x.vector)
                return i;
        return g.effects().size();
    };
    std::stable_sort(out.begin(), out.end(),
                     [&](const Labeled& a, const Labeled& b) { return position(a) < position(b); });

    std::vector<Vec> by_split;
    for (const Vec& v : effect_set_vertices(g))
        if (!v.is_zero() && !detail::refinable(c, v))
            by_split.push_back(v);
    std::sort(by_ray.begin(), by_ray.end());
    if (by_ray != by_split)
        throw InternalError("nonrefinable effects: extreme-ray and decomposition characterizations disagree");
    return out;
}

}   // namespace gptlab

#endif
