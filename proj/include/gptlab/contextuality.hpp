/**
 * Ontological models of (sub)theories: verification of noncontextual
 * models, classification of theories obeying the no-restriction
 * hypothesis, non-unique convex decompositions as contextuality
 * witnesses, and the two embedding searches for subtheories.
 */

#ifndef GPTLAB_CONTEXTUALITY_HPP
#define GPTLAB_CONTEXTUALITY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cone.hpp"
#include "gpt.hpp"
#include "linalg.hpp"
#include "lp.hpp"

namespace gptlab {

/**
 * A finite ontological model given by dual frames: the ontic state of rho
 * is lambda -> <rho, F(lambda)> and the response of E is
 * lambda -> <E, D(lambda)>.
 */
struct OntModel
{
    std::vector<Vec> state_frame;    // D(lambda)
    std::vector<Vec> effect_frame;   // F(lambda)

    std::size_t ontic_size() const { return state_frame.size(); }

    Vec ontic_state(const Vec& rho) const
    {
        std::vector<Rational> out;
        for (const Vec& f : effect_frame)
            out.push_back(inner(rho, f));
        return Vec(std::move(out));
    }

    Vec response(const Vec& effect) const
    {
        std::vector<Rational> out;
        for (const Vec& d : state_frame)
            out.push_back(inner(effect, d));
        return Vec(std::move(out));
    }

    friend bool operator==(const OntModel&, const OntModel&) = default;
};

struct NcomReport
{
    struct Check
    {
        std::string name;
        bool passed;
        std::string detail;
    };

    std::vector<Check> checks;
    bool exceeds_dimension = false;   // ontic_size > dim: indistinguishable ontic states possible

    bool ok() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }

    bool passed(const std::string& name) const
    {
        for (const Check& c : checks)
            if (c.name == name)
                return c.passed;
        return false;
    }
};

/**
 * Checks the frame conditions (normalized D, F summing to U, the
 * reconstruction identity), positivity of ontic states and responses on
 * every generator, and exact reproduction of all generator statistics.
 */
inline NcomReport verify_ncom(const OntModel& m, const Gpt& g)
{
    NcomReport rep;
    const std::size_t d = g.dim();
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    bool sizes = m.state_frame.size() == m.effect_frame.size() && m.ontic_size() > 0;
    for (const Vec& v : m.state_frame)
        sizes = sizes && v.dim() == d;
    for (const Vec& v : m.effect_frame)
        sizes = sizes && v.dim() == d;
    add("frame-sizes", sizes,
        std::to_string(m.state_frame.size()) + " state-frame and " + std::to_string(m.effect_frame.size())
            + " effect-frame vectors in dimension " + std::to_string(d));
    if (!sizes)
        return rep;
    rep.exceeds_dimension = m.ontic_size() > d;

    std::string bad;
    for (std::size_t l = 0; l < m.ontic_size(); ++l)
        if (inner(g.unit(), m.state_frame[l]) != 1)
            bad += " D(" + std::to_string(l) + ")";
    add("state-normalization", bad.empty(), bad.empty() ? "" : "<U, D> != 1 for" + bad);

    Vec total = Vec::zero(d);
    for (const Vec& f : m.effect_frame)
        total = total + f;
    add("effect-frame-sum", total == g.unit(), "sum F = " + to_string(total));

    bool identity = outer_sum(m.state_frame, m.effect_frame) == Mat::identity(d);
    add("reconstruction", identity, identity ? "" : "sum D F^T differs from the identity");

    bad.clear();
    for (const Labeled& s : g.states())
        for (const Rational& x : m.ontic_state(s.vector))
            if (x < 0)
            {
                bad += " " + s.label;
                break;
            }
    add("state-positivity", bad.empty(), bad.empty() ? "" : "negative ontic weight for" + bad);

    bad.clear();
    for (const Labeled& e : g.effects())
        for (const Rational& x : m.response(e.vector))
            if (x < 0 || x > 1)
            {
                bad += " " + e.label;
                break;
            }
    add("response-range", bad.empty(), bad.empty() ? "" : "response outside [0,1] for" + bad);

    bad.clear();
    for (const Labeled& e : g.effects())
    {
        Vec z = m.response(e.vector);
        for (const Labeled& s : g.states())
            if (inner(m.ontic_state(s.vector), z) != inner(e.vector, s.vector))
                bad += " (" + e.label + "," + s.label + ")";
    }
    add("statistics", bad.empty(), bad.empty() ? "" : "wrong statistics for" + bad);
    return rep;
}

/**
 * A point with two different convex decompositions over a generator set.
 * The generators are rescaled onto the slice <normalizer, g> = 1, where
 * every affine dependence closes exactly.
 */
struct NonUniqueDecomposition
{
    Vec normalizer;
    std::vector<Labeled> generators;   // rescaled
    std::size_t dependent = 0;         // J
    std::vector<Rational> expansion;   // generators[J] = sum alpha_i generators[i], alpha_J = 0
    std::vector<std::size_t> negative;
    std::vector<std::size_t> positive;
    Rational total_positive;           // N
    Vec point;                         // C
    std::vector<Rational> first;       // contains the dependent generator
    std::vector<Rational> second;      // positive part of the expansion only

    bool verify() const
    {
        const std::size_t d = point.dim();
        std::vector<Vec> gs = vectors_of(generators);
        Rational alpha_total = 0;
        for (const Rational& a : expansion)
            alpha_total += a;
        for (const Vec& g : gs)
            if (g.dim() != d || inner(normalizer, g) != 1)
                return false;
        if (dependent >= gs.size() || expansion.size() != gs.size() || expansion[dependent] != 0 || alpha_total != 1
            || combine(expansion, gs, d) != gs[dependent])
            return false;
        auto convex = [&](const std::vector<Rational>& c) {
            if (c.size() != gs.size())
                return false;
            Rational t = 0;
            for (const Rational& x : c)
            {
                if (x < 0)
                    return false;
                t += x;
            }
            return t == 1 && combine(c, gs, d) == point;
        };
        return convex(first) && convex(second) && first != second;
    }
};

/**
 * Builds the witness from the first generator (in input order) that has
 * an affine expansion over the others with a negative coefficient.
 * Returns nullopt when no generator has one.
 */
inline std::optional<NonUniqueDecomposition> nonunique_decomposition(const std::vector<Labeled>& generators,
                                                                     const Vec& normalizer)
{
    std::vector<Labeled> gs;
    for (const Labeled& g : generators)
    {
        Rational w = inner(normalizer, g.vector);
        if (w <= 0)
            throw PreconditionError("normalizer " + to_string(normalizer) + " is not strictly positive on generator '"
                                    + g.label + "'");
        gs.push_back({g.label, g.vector / w});
    }
    const std::size_t n = gs.size();
    if (n < 2)
        return std::nullopt;
    const std::size_t d = normalizer.dim();

    for (std::size_t j = 0; j < n; ++j)
    {
        std::vector<Vec> others;
        std::vector<std::size_t> index;
        for (std::size_t i = 0; i < n; ++i)
            if (i != j)
            {
                others.push_back(gs[i].vector);
                index.push_back(i);
            }
        auto sol = solve_affine(gs[j].vector, others);
        if (!sol)
            continue;

        // A solution with a negative entry: the particular one, or a step
        // along a null direction that drives some coordinate to -1.
        std::optional<Vec> alpha;
        if (std::any_of(sol->particular.begin(), sol->particular.end(), [](const Rational& x) { return x < 0; }))
            alpha = sol->particular;
        for (std::size_t k = 0; !alpha && k < sol->directions.size(); ++k)
        {
            const Vec& dir = sol->directions[k];
            for (std::size_t i = 0; i < dir.dim(); ++i)
                if (dir[i] != 0)
                {
                    Rational t = -(sol->particular[i] + 1) / dir[i];
                    alpha = sol->particular + t * dir;
                    break;
                }
        }
        if (!alpha)
            continue;

        NonUniqueDecomposition w;
        w.normalizer = normalizer;
        w.generators = gs;
        w.dependent = j;
        w.expansion.assign(n, 0);
        for (std::size_t k = 0; k < index.size(); ++k)
            w.expansion[index[k]] = (*alpha)[k];
        w.total_positive = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            if (w.expansion[i] < 0)
                w.negative.push_back(i);
            else if (w.expansion[i] > 0)
            {
                w.positive.push_back(i);
                w.total_positive += w.expansion[i];
            }
        }
        const Rational& big_n = w.total_positive;
        w.first.assign(n, 0);
        w.second.assign(n, 0);
        w.first[j] = 1 / big_n;
        for (std::size_t i : w.negative)
            w.first[i] = -w.expansion[i] / big_n;
        for (std::size_t i : w.positive)
            w.second[i] = w.expansion[i] / big_n;
        w.point = combine(w.second, vectors_of(gs), d);
        if (!w.verify())
            throw InternalError("non-unique decomposition failed re-verification");
        return w;
    }
    return std::nullopt;
}

enum class Side
{
    states,
    effects
};

inline const char* to_string(Side s)
{
    return s == Side::states ? "states" : "effects";
}

struct ContextualityVerdict
{
    bool noncontextual = false;
    std::vector<Labeled> pure;
    std::vector<Labeled> nonrefinable;
    std::optional<OntModel> model;
    std::optional<NonUniqueDecomposition> state_witness;
    std::optional<NonUniqueDecomposition> effect_witness;

    /// The side whose witness is reported first.
    Side failing_side() const { return state_witness ? Side::states : Side::effects; }
};

namespace detail {

inline bool is_basis(const std::vector<Labeled>& xs, std::size_t dim)
{
    return xs.size() == dim && rank(vectors_of(xs)) == dim;
}

inline OntModel dirac_model(const std::vector<Labeled>& pure)
{
    OntModel m;
    m.state_frame = vectors_of(pure);
    m.effect_frame = dual_basis(m.state_frame);
    return m;
}

inline void require_theory(const Gpt& g, const char* op)
{
    if (!validate(g).ok())
        throw PreconditionError(std::string(op) + ": theory '" + g.name() + "' does not validate");
    if (!no_restriction_check(g).holds())
        throw PreconditionError(std::string(op) + ": theory '" + g.name()
                                + "' violates the no-restriction hypothesis; it is a subtheory, use the "
                                  "same-dimension embedding search (embed --exact-dim) instead");
}

}   // namespace detail

/**
 * Noncontextual iff the pure states and the nonrefinable effects are each
 * a basis. Noncontextual verdicts carry the Dirac model; contextual ones a
 * non-unique decomposition on each failing side.
 */
inline ContextualityVerdict classify(const Gpt& g)
{
    detail::require_theory(g, "classify");
    ContextualityVerdict v;
    v.pure = pure_states(g);
    v.nonrefinable = nonrefinable_effects(g);
    bool states_ok = detail::is_basis(v.pure, g.dim());
    bool effects_ok = detail::is_basis(v.nonrefinable, g.dim());
    if (states_ok && effects_ok)
    {
        v.noncontextual = true;
        v.model = detail::dirac_model(v.pure);
        if (!verify_ncom(*v.model, g).ok())
            throw InternalError("Dirac model of a simplicial theory failed verification");
        return v;
    }
    if (!states_ok)
    {
        v.state_witness = nonunique_decomposition(v.pure, g.unit());
        if (!v.state_witness)
            throw InternalError("overcomplete pure states without a non-unique decomposition");
    }
    if (!effects_ok)
    {
        auto w = strictly_positive_functional(vectors_of(v.nonrefinable), g.dim());
        if (!w)
            throw InternalError("no strictly positive functional on the nonrefinable effects");
        v.effect_witness = nonunique_decomposition(v.nonrefinable, *w);
        if (!v.effect_witness)
            throw InternalError("overcomplete nonrefinable effects without a non-unique decomposition");
    }
    return v;
}

/// The Dirac model of a noncontextual theory: D = pure states, F = their dual basis.
inline OntModel build_ncom(const Gpt& g)
{
    ContextualityVerdict v = classify(g);
    if (!v.noncontextual)
    {
        const NonUniqueDecomposition& w = v.state_witness ? *v.state_witness : *v.effect_witness;
        throw PreconditionError("build_ncom: theory '" + g.name() + "' is ontologically contextual; "
                                + to_string(w.point) + " has two convex decompositions over the "
                                + to_string(v.failing_side()));
    }
    return *v.model;
}

/**
 * Result of the unbounded-cardinality embedding LP: either a model, or a
 * matrix Y (row-major) with <h_a, Y r_b> >= 0 for all candidate pairs and
 * trace(Y) < 0.
 */
struct EmbedLpResult
{
    std::optional<OntModel> model;
    std::vector<Vec> state_dual_rays;      // h_a: extreme rays of the dual of the state cone
    std::vector<Vec> effect_dual_points;   // r_b: dual rays of the effect cone, <U, r_b> = 1
    std::vector<Rational> farkas;

    bool verify_farkas() const
    {
        if (state_dual_rays.empty() || effect_dual_points.empty())
            return false;
        std::size_t d = state_dual_rays.front().dim();
        if (farkas.size() != d * d)
            return false;
        Rational trace = 0;
        for (std::size_t i = 0; i < d; ++i)
            trace += farkas[i * d + i];
        if (trace >= 0)
            return false;
        for (const Vec& h : state_dual_rays)
            for (const Vec& r : effect_dual_points)
            {
                Rational s = 0;
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j)
                        s += h[i] * farkas[i * d + j] * r[j];
                if (s < 0)
                    return false;
            }
        return true;
    }
};

/**
 * Decides whether nonnegative weights sigma_ab with
 * sum sigma_ab h_a r_b^T = identity exist. A basic feasible solution
 * becomes a model with one ontic point per nonzero weight:
 * F = sigma_ab h_a, D = r_b.
 */
inline EmbedLpResult embed_lp(const Gpt& g)
{
    if (!validate(g).ok())
        throw PreconditionError("embed_lp: theory '" + g.name() + "' does not validate");
    const std::size_t d = g.dim();
    EmbedLpResult res;
    res.state_dual_rays = dual_cone(state_cone(g)).rays();
    for (const Vec& r : dual_cone(effect_cone(g)).rays())
    {
        Rational u = inner(g.unit(), r);
        if (u > 0)
            res.effect_dual_points.push_back(r / u);
    }
    const auto& hs = res.state_dual_rays;
    const auto& rs = res.effect_dual_points;

    std::vector<Vec> rows;
    std::vector<Rational> rhs;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
        {
            std::vector<Rational> row;
            for (const Vec& h : hs)
                for (const Vec& r : rs)
                    row.push_back(h[i] * r[j]);
            rows.emplace_back(std::move(row));
            rhs.emplace_back(i == j ? 1 : 0);
        }
    auto lp = find_nonnegative_solution(Mat(rows, hs.size() * rs.size()), Vec(rhs));
    if (!lp.feasible)
    {
        res.farkas = lp.farkas.entries();
        if (!res.verify_farkas())
            throw InternalError("embedding LP certificate failed re-verification");
        return res;
    }
    OntModel m;
    for (std::size_t a = 0; a < hs.size(); ++a)
        for (std::size_t b = 0; b < rs.size(); ++b)
        {
            const Rational& s = lp.solution[a * rs.size() + b];
            if (s == 0)
                continue;
            m.effect_frame.push_back(s * hs[a]);
            m.state_frame.push_back(rs[b]);
        }
    if (!verify_ncom(m, g).ok())
        throw InternalError("embedding LP model failed verification");
    res.model = std::move(m);
    return res;
}

struct ExactDimResult
{
    std::optional<OntModel> model;
    std::size_t explored = 0;    // candidate subsets examined
    std::optional<Side> found_on;   // which candidate family produced the hit
};

namespace detail {

/// Advances idx to the next k-subset of {0..n-1} in lexicographic order.
inline bool next_subset(std::vector<std::size_t>& idx, std::size_t n)
{
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;)
    {
        if (idx[i] < n - k + i)
        {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}   // namespace detail

/**
 * Searches for a model with exactly dim ontic points. Candidates for F are
 * dim-subsets of the extreme rays of the dual state cone (scaled so they
 * sum to U); candidates for D are dim-subsets of the normalized dual rays
 * of the effect cone. Subsets are tried in lexicographic order over the
 * canonical ray order and the first verified model is returned. A miss is
 * exhaustive only within this candidate class.
 */
inline ExactDimResult embed_exact_dim(const Gpt& g)
{
    if (!validate(g).ok())
        throw PreconditionError("embed_exact_dim: theory '" + g.name() + "' does not validate");
    const std::size_t d = g.dim();
    ExactDimResult res;
    auto accept = [&](OntModel m, Side side) {
        if (!verify_ncom(m, g).ok())
            return false;
        res.model = std::move(m);
        res.found_on = side;
        return true;
    };

    std::vector<Vec> hs = dual_cone(state_cone(g)).rays();
    if (hs.size() >= d)
    {
        std::vector<std::size_t> idx(d);
        for (std::size_t i = 0; i < d; ++i)
            idx[i] = i;
        do
        {
            ++res.explored;
            std::vector<Vec> basis;
            for (std::size_t i : idx)
                basis.push_back(hs[i]);
            auto c = coordinates(g.unit(), basis);
            if (!c || std::any_of(c->begin(), c->end(), [](const Rational& x) { return x <= 0; }))
                continue;
            OntModel m;
            for (std::size_t i = 0; i < d; ++i)
                m.effect_frame.push_back((*c)[i] * basis[i]);
            m.state_frame = dual_basis(m.effect_frame);
            if (accept(std::move(m), Side::effects))
                return res;
        } while (detail::next_subset(idx, hs.size()));
    }

    std::vector<Vec> rs;
    for (const Vec& r : dual_cone(effect_cone(g)).rays())
    {
        Rational u = inner(g.unit(), r);
        if (u > 0)
            rs.push_back(r / u);
    }
    if (rs.size() >= d)
    {
        std::vector<std::size_t> idx(d);
        for (std::size_t i = 0; i < d; ++i)
            idx[i] = i;
        do
        {
            ++res.explored;
            std::vector<Vec> basis;
            for (std::size_t i : idx)
                basis.push_back(rs[i]);
            if (rank(basis) < d)
                continue;
            OntModel m;
            m.state_frame = basis;
            m.effect_frame = dual_basis(basis);
            if (accept(std::move(m), Side::states))
                return res;
        } while (detail::next_subset(idx, rs.size()));
    }
    return res;
}

/**
 * Two different ontic distributions that no effect of the theory can tell
 * apart. `second` is the uniform distribution; `first` moves from it
 * along `direction` until a weight hits zero.
 */
struct IndistinguishablePair
{
    Vec first;
    Vec second;
    Vec direction;
    Mat responses;   // rows: responses of the effect generators

    bool verify() const
    {
        auto distribution = [](const Vec& p) {
            Rational t = 0;
            for (const Rational& x : p)
            {
                if (x < 0)
                    return false;
                t += x;
            }
            return t == 1;
        };
        return distribution(first) && distribution(second) && first != second
               && responses * first == responses * second;
    }
};

inline std::optional<IndistinguishablePair> indistinguishability_witness(const Gpt& g, const OntModel& m)
{
    NcomReport rep = verify_ncom(m, g);
    if (!rep.passed("frame-sizes") || !rep.passed("reconstruction") || !rep.passed("statistics"))
        throw PreconditionError("indistinguishability_witness: the model is inconsistent with theory '" + g.name()
                                + "'");
    const std::size_t n = m.ontic_size();
    std::vector<Vec> rows;
    for (const Labeled& e : g.effects())
        rows.push_back(m.response(e.vector));
    Mat responses(rows, n);
    rows.emplace_back(std::vector<Rational>(n, Rational(1)));
    std::vector<Vec> null = null_space(Mat(rows, n));
    if (null.empty())
        return std::nullopt;

    IndistinguishablePair p;
    p.direction = null.front();
    p.second = Vec(std::vector<Rational>(n, Rational(1, n)));
    std::optional<Rational> step;
    for (std::size_t l = 0; l < n; ++l)
        if (p.direction[l] < 0)
        {
            Rational t = p.second[l] / -p.direction[l];
            if (!step || t < *step)
                step = t;
        }
    p.first = p.second + *step * p.direction;
    p.responses = responses;
    if (!p.verify())
        throw InternalError("indistinguishable pair failed re-verification");
    return p;
}

}   // namespace gptlab

#endif
